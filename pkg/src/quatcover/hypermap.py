"""Algebraic hypermaps: a finite group with an ordered generating pair.

A regular hypermap is modelled as (G, x, y) with G = <x, y>.  Hypervertices,
hyperedges and hyperfaces correspond to the cosets of <x>, <y> and <xy>, and
the type and genus come from the orders of those three elements.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .fpgroup import (
    PermGroup,
    Presentation,
    Word,
    evaluate_word,
    identity_perm,
    pinv,
    pmul,
    porder,
    regular_representation,
    subgroup_generated,
)


class HypermapError(Exception):
    pass


class GenusError(HypermapError):
    """The Euler-Poincare computation produced a non-integral or negative genus."""


@dataclass(frozen=True)
class AlgebraicHypermap:
    group: PermGroup
    x: tuple[int, ...]
    y: tuple[int, ...]
    source: Presentation | None = None

    @property
    def xy(self) -> tuple[int, ...]:
        return pmul(self.x, self.y)

    @property
    def order(self) -> int:
        return self.group.order

    def type_of(self) -> tuple[int, int, int]:
        return porder(self.x), porder(self.y), porder(self.xy)

    def genus_of(self) -> int:
        """Genus from the Euler-Poincare formula for orientable regular hypermaps."""
        ox, oy, oz = self.type_of()
        chi = self.order * (Fraction(1, ox) + Fraction(1, oy) + Fraction(1, oz) - 1)
        g = Fraction(2 - chi, 2)
        if g.denominator != 1 or g < 0:
            raise GenusError(f"Euler characteristic {chi} gives genus {g}")
        return int(g)


def hypermap_from_presentation(p: Presentation, max_cosets: int | None = None) -> AlgebraicHypermap:
    """Build the hypermap of a two-generator presentation via coset enumeration."""
    if p.num_gens != 2:
        raise ValueError("a hypermap presentation needs exactly two generators")
    kwargs = {} if max_cosets is None else {"max_cosets": max_cosets}
    G, (gx, gy) = regular_representation(p, **kwargs)
    return AlgebraicHypermap(G, gx, gy, source=p)


def hypermaps_isomorphic(h1: AlgebraicHypermap, h2: AlgebraicHypermap) -> bool:
    """Whether x1 -> x2, y1 -> y2 extends to a group isomorphism.

    Requires a presentation on h1: the map is an isomorphism exactly when the
    orders agree, the relators of h1 are satisfied by (x2, y2), and (x2, y2)
    generate (which they do by definition of a hypermap).
    """
    if h1.source is None:
        raise HypermapError("first hypermap carries no presentation")
    if h1.order != h2.order:
        return False
    ident = identity_perm(h2.group.degree)
    return all(evaluate_word(r, (h2.x, h2.y)) == ident for r in h1.source.relators)


@dataclass(frozen=True)
class CoveringReport:
    is_covering: bool
    kernel_order: int = 0
    kernel_abelian: bool = False
    smooth_vertices: bool = False
    smooth_edges: bool = False
    smooth_faces: bool = False
    failed_relator: Word | None = None

    @property
    def smooth(self) -> bool:
        return self.smooth_vertices and self.smooth_edges and self.smooth_faces


def covering_report(cover: AlgebraicHypermap, base: AlgebraicHypermap) -> CoveringReport:
    """Check that x -> x', y -> y' induces a covering and report its kernel.

    The covering is smooth over hypervertices / hyperedges / hyperfaces when
    the orders of x / y / xy agree upstairs and downstairs.
    """
    if base.source is None:
        raise HypermapError("base hypermap carries no presentation")
    ident = identity_perm(base.group.degree)
    if cover.order % base.order != 0:
        return CoveringReport(False)
    # every relator of the cover must die in the base
    if cover.source is not None:
        for r in cover.source.relators:
            if evaluate_word(r, (base.x, base.y)) != ident:
                return CoveringReport(False, failed_relator=r)
        kernel_order = cover.order // base.order
        kernel_abelian = _kernel_is_abelian(cover, base)
    else:
        raise HypermapError("cover hypermap carries no presentation")
    t_cover = cover.type_of()
    t_base = base.type_of()
    return CoveringReport(
        True,
        kernel_order=kernel_order,
        kernel_abelian=kernel_abelian,
        smooth_vertices=t_cover[0] == t_base[0],
        smooth_edges=t_cover[1] == t_base[1],
        smooth_faces=t_cover[2] == t_base[2],
    )


def _kernel_is_abelian(cover: AlgebraicHypermap, base: AlgebraicHypermap) -> bool:
    from .fpgroup import homomorphism_map

    phi = homomorphism_map(cover.group, (cover.x, cover.y), (base.x, base.y))
    ident = identity_perm(base.group.degree)
    kernel = [g for g, img in phi.items() if img == ident]
    K = subgroup_generated(cover.group.degree, kernel, cover.group.element_cap)
    return K.is_abelian()


def kernel_subgroup(cover: AlgebraicHypermap, base: AlgebraicHypermap) -> PermGroup:
    """Kernel of the covering homomorphism as a permutation group."""
    from .fpgroup import homomorphism_map

    phi = homomorphism_map(cover.group, (cover.x, cover.y), (base.x, base.y))
    ident = identity_perm(base.group.degree)
    kernel = sorted(g for g, img in phi.items() if img == ident)
    return subgroup_generated(cover.group.degree, kernel, cover.group.element_cap)


# ---------------------------------------------------------------------------
# Walsh bipartite skeleton fingerprints
# ---------------------------------------------------------------------------

BIPARTITE_ISO_CAP = 16


def walsh_fingerprint(h: AlgebraicHypermap) -> list[list[int]]:
    """Multiplicity matrix of the bipartite incidence graph.

    Black vertices are the cosets g<x>, white vertices the cosets g<y>; entry
    (b, w) counts group elements lying in both cosets, i.e. the number of
    darts joining that black/white pair.  In the regular action (degree equal
    to the group order) the right cosets of <x> are exactly the orbits of the
    permutation x, which keeps this linear in the group order.
    """
    if h.group.degree == h.order:
        black = _orbit_labels(h.x)
        white = _orbit_labels(h.y)
    else:
        x_sub = subgroup_generated(h.group.degree, [h.x], h.group.element_cap)
        y_sub = subgroup_generated(h.group.degree, [h.y], h.group.element_cap)
        black = _coset_labels(h.group.elements, x_sub)
        white = _coset_labels(h.group.elements, y_sub)
    nb, nw = max(black) + 1, max(white) + 1
    rows = [[0] * nw for _ in range(nb)]
    for b, w in zip(black, white):
        rows[b][w] += 1
    return rows


def _orbit_labels(p: tuple[int, ...]) -> list[int]:
    labels = [-1] * len(p)
    nxt = 0
    for i in range(len(p)):
        if labels[i] < 0:
            j = i
            while labels[j] < 0:
                labels[j] = nxt
                j = p[j]
            nxt += 1
    return labels


def _coset_labels(elems, sub) -> list[int]:
    seen: dict[frozenset, int] = {}
    return [seen.setdefault(frozenset(pmul(g, s) for s in sub.elements), len(seen))
            for g in elems]


def multiplicity_matrices_isomorphic(a: list[list[int]], b: list[list[int]]) -> bool | None:
    """Bipartite multigraph isomorphism by row/column permutation search.

    Rows are assigned in order with a column-profile consistency check after
    every assignment, which prunes the search hard.  Returns None (undecided)
    when either side exceeds the search cap.
    """
    if len(a) != len(b) or (a and b and len(a[0]) != len(b[0])):
        return False
    if sorted(map(sorted, a)) != sorted(map(sorted, b)):
        return False
    if len(a) > BIPARTITE_ISO_CAP or (a and len(a[0]) > BIPARTITE_ISO_CAP):
        return None
    if not a:
        return True
    cols = len(a[0])
    rows_b = [tuple(r) for r in b]
    used = [False] * len(rows_b)
    assignment: list[int] = []

    def col_profiles_match(depth: int) -> bool:
        # column multisets restricted to the assigned rows must agree
        pa = sorted(tuple(a[r][c] for r in range(depth)) for c in range(cols))
        pb = sorted(tuple(rows_b[assignment[r]][c] for r in range(depth))
                    for c in range(cols))
        return pa == pb

    def match_rows(i: int) -> bool:
        if i == len(a):
            return _column_match(a, [rows_b[j] for j in assignment], cols)
        sig = sorted(a[i])
        for j in range(len(rows_b)):
            if not used[j] and sorted(rows_b[j]) == sig:
                used[j] = True
                assignment.append(j)
                if col_profiles_match(i + 1) and match_rows(i + 1):
                    return True
                assignment.pop()
                used[j] = False
        return False

    return match_rows(0)


def _column_match(a: list[list[int]], b_rows: list[tuple[int, ...]], cols: int) -> bool:
    used = [False] * cols

    def rec(c: int) -> bool:
        if c == cols:
            return True
        for d in range(cols):
            if used[d]:
                continue
            if all(a[r][c] == b_rows[r][d] for r in range(len(a))):
                used[d] = True
                if rec(c + 1):
                    return True
                used[d] = False
        return False

    return rec(0)


# ---------------------------------------------------------------------------
# Reference multiplicity matrices
# ---------------------------------------------------------------------------

def complete_bipartite_matrix(nb: int, nw: int, multiplicity: int = 1) -> list[list[int]]:
    return [[multiplicity] * nw for _ in range(nb)]


def cycle_matrix(nb: int, multiplicity: int = 1) -> list[list[int]]:
    """An even cycle with nb black and nb white vertices, edges doubled by
    the multiplicity: black i joins white i and white i+1."""
    rows = [[0] * nb for _ in range(nb)]
    for i in range(nb):
        rows[i][i] = multiplicity
        rows[i][(i + 1) % nb] = multiplicity
    return rows


def hypercube_matrix(dim: int) -> list[list[int]]:
    """The dim-dimensional hypercube graph, bipartitioned by bit parity."""
    verts = list(range(2 ** dim))
    black = [v for v in verts if bin(v).count("1") % 2 == 0]
    white = [v for v in verts if bin(v).count("1") % 2 == 1]
    w_index = {v: i for i, v in enumerate(white)}
    rows = [[0] * len(white) for _ in black]
    for bi, v in enumerate(black):
        for k in range(dim):
            rows[bi][w_index[v ^ (1 << k)]] = 1
    return rows


def doubled_vertex_cycle_matrix(nb: int) -> list[list[int]]:
    """The blow-up of a 2nb-cycle replacing every vertex by two twins."""
    base = cycle_matrix(nb)
    rows = [[0] * (2 * nb) for _ in range(2 * nb)]
    for i in range(nb):
        for j in range(nb):
            if base[i][j]:
                for s in (0, 1):
                    for t in (0, 1):
                        rows[2 * i + s][2 * j + t] = base[i][j]
    return rows


_REFERENCE_BUILDERS = {
    "K(2,2)^2": lambda: complete_bipartite_matrix(2, 2, 2),
    "K(4,4)": lambda: complete_bipartite_matrix(4, 4),
    "C8^2": lambda: cycle_matrix(4, 2),
    "Q4": lambda: hypercube_matrix(4),
    "C8[2]": lambda: doubled_vertex_cycle_matrix(4),
}


def fingerprint_name(matrix: list[list[int]]) -> str:
    """Match a multiplicity matrix against the catalog of named skeletons.

    Falls back to a shape summary string for unrecognized graphs.
    """
    for name, builder in _REFERENCE_BUILDERS.items():
        verdict = multiplicity_matrices_isomorphic(matrix, builder())
        if verdict:
            return name
    nb = len(matrix)
    nw = len(matrix[0]) if matrix else 0
    darts = sum(sum(r) for r in matrix)
    return f"bipartite({nb},{nw};{darts})"
