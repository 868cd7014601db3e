"""Hypermap operations as substitutions on a two-generator free group.

An operation is determined by where it sends the generators x and y; the
exterior ones act on every hypermap by replacing the generating pair.  Their
shadows in GL(2, Z) -- the exponent-sum matrices of the images -- organise the
operation groups into a lattice.
"""
from __future__ import annotations

from dataclasses import dataclass

from .fpgroup import (
    Presentation,
    Word,
    X,
    Y,
    evaluate_word,
    identity_perm,
    subgroup_generated,
)
from .hypermap import AlgebraicHypermap
from .intlattice import IntMatrix


class OperationError(Exception):
    pass


@dataclass(frozen=True)
class GenSubstitution:
    """An automorphism of the free group on x, y given by generator images.

    ``inverse_x`` and ``inverse_y`` are the images of x and y under the
    inverse automorphism; they are needed to transport presentations.
    """
    name: str
    image_x: Word
    image_y: Word
    inverse_x: Word
    inverse_y: Word

    def __post_init__(self):
        # the stated inverse really must invert the substitution
        for start, expected in ((self.image_x, X), (self.image_y, Y)):
            got = start.substitute((self.inverse_x, self.inverse_y))
            if got != expected:
                raise OperationError(f"{self.name}: inverse words do not invert")

    def apply_to_words(self, wx: Word, wy: Word) -> tuple[Word, Word]:
        return (self.image_x.substitute((wx, wy)),
                self.image_y.substitute((wx, wy)))


def _sub(name: str, ix: Word, iy: Word, inv_x: Word, inv_y: Word) -> GenSubstitution:
    return GenSubstitution(name, ix.free_reduce(), iy.free_reduce(),
                           inv_x.free_reduce(), inv_y.free_reduce())


Xi, Yi = X.inverse(), Y.inverse()
_XY = X * Y

tau = _sub("tau", Y, X, Y, X)
pi = _sub("pi", X, Yi, X, Yi)
pi1 = _sub("pi1", Xi, Y, Xi, Y)
iota = _sub("iota", Xi, Yi, Xi, Yi)
# varsigma: x -> y^-1, y -> yx; inverse: x -> x^-1 y^-1 ... solved directly
varsigma = _sub("varsigma", Yi, Y * X, _XY, Xi)
# theta = varsigma^2: the order-3 triality rotating vertices -> faces -> edges
theta = _sub("theta", (_XY).inverse(), X, Y, (_XY).inverse())
# two further exterior substitutions used when generating the full lattice
zeta = _sub("zeta", _XY, Y, X * Yi, Y)
eta = _sub("eta", X, Y * X, X, Y * Xi)


def builtin_operations() -> dict[str, GenSubstitution]:
    """The six catalog operations: transposition, the two Petrie twists,
    mirror image, the order-6 rotation and the order-3 triality."""
    return {s.name: s for s in (tau, pi, pi1, iota, varsigma, theta)}


def extra_operations() -> dict[str, GenSubstitution]:
    return {s.name: s for s in (zeta, eta)}


def compose(a: GenSubstitution, b: GenSubstitution) -> GenSubstitution:
    """The substitution 'apply a, then read b's images through it'.

    compose(a, b) sends a word w to w[x := b_x[a], y := b_y[a]]; shadows
    multiply in the reverse order: shadow(compose(a, b)) = shadow(b) @ shadow(a).
    """
    ix = b.image_x.substitute((a.image_x, a.image_y))
    iy = b.image_y.substitute((a.image_x, a.image_y))
    inv_x = a.inverse_x.substitute((b.inverse_x, b.inverse_y))
    inv_y = a.inverse_y.substitute((b.inverse_x, b.inverse_y))
    return GenSubstitution(f"({a.name}*{b.name})", ix, iy, inv_x, inv_y)


def inverse_of(a: GenSubstitution) -> GenSubstitution:
    return GenSubstitution(f"{a.name}^-1", a.inverse_x, a.inverse_y,
                           a.image_x, a.image_y)


# ---------------------------------------------------------------------------
# Shadows in GL(2, Z)
# ---------------------------------------------------------------------------

def abelianize(s: GenSubstitution) -> IntMatrix:
    """Exponent-sum shadow of a substitution.

    Row 0 is the (x, y) exponent vector of image_x, row 1 that of image_y.
    Free-group automorphisms shadow to determinant +-1 matrices.
    """
    def exps(w: Word) -> list[int]:
        e = [0, 0]
        for a in w.letters:
            e[abs(a) - 1] += 1 if a > 0 else -1
        return e

    mat = IntMatrix.from_rows([exps(s.image_x), exps(s.image_y)])
    if mat.det() not in (1, -1):
        raise OperationError(f"{s.name}: shadow is not invertible over Z")
    return mat


def mat2(a: int, b: int, c: int, d: int) -> IntMatrix:
    return IntMatrix.from_rows([[a, b], [c, d]])


MAT_T = mat2(0, 1, 1, 0)
MAT_P = mat2(1, 0, 0, -1)
MAT_D = mat2(-1, -1, 1, 0)
MAT_S = mat2(0, -1, 1, 1)
MAT_I = mat2(1, 0, 0, 1)
MAT_NEG_I = mat2(-1, 0, 0, -1)


def matrix_group_closure(generators: list[IntMatrix], cap: int = 4096) -> list[IntMatrix]:
    """All products of the generators, in BFS order from the identity."""
    ident = MAT_I
    seen = {ident.entries: ident}
    queue = [ident]
    qi = 0
    while qi < len(queue):
        g = queue[qi]
        qi += 1
        for s in generators:
            h = g @ s
            if h.entries not in seen:
                if len(seen) >= cap:
                    raise OperationError("matrix group closure exceeded cap")
                seen[h.entries] = h
                queue.append(h)
    return queue


def matrix_group_structure(elements: list[IntMatrix]) -> str:
    """Coarse isomorphism label for the small shadow groups of the lattice."""
    n = len(elements)
    orders = sorted(_matrix_order(m) for m in elements)
    abelian = all((a @ b).entries == (b @ a).entries
                  for i, a in enumerate(elements) for b in elements[i:])
    if n == 1:
        return "1"
    if n == 2:
        return "Z2"
    if n == 4 and abelian:
        return "V4" if orders == [1, 2, 2, 2] else "Z4"
    if n == 6 and not abelian:
        return "Sym(3)"
    if n == 8 and not abelian and orders.count(2) == 5:
        return "D8"
    if n == 12 and not abelian and max(orders) == 6:
        return "D12"
    return f"order {n}"


def _matrix_order(m: IntMatrix, cap: int = 64) -> int:
    p = m
    for k in range(1, cap + 1):
        if p.entries == MAT_I.entries:
            return k
        p = p @ m
    raise OperationError("matrix has infinite order (or order above cap)")


def operation_lattice() -> dict[str, dict]:
    """The five shadow subgroups and the covering relations between them.

    Groups: L1 = <P, -I>, L2 = <-I, T> (both Klein four-groups),
    L3 = <T, D> = Sym(3), O1 = <P, T> dihedral of order 8,
    O2 = <T, S> dihedral of order 12.
    """
    groups = {
        "L1": [MAT_P, MAT_NEG_I],
        "L2": [MAT_NEG_I, MAT_T],
        "L3": [MAT_T, MAT_D],
        "O1": [MAT_P, MAT_T],
        "O2": [MAT_T, MAT_S],
    }
    out = {}
    for name, gens in groups.items():
        elems = matrix_group_closure(gens)
        out[name] = {
            "generators": gens,
            "elements": elems,
            "order": len(elems),
            "structure": matrix_group_structure(elems),
        }
    return out


HASSE_EDGES = (
    ("L1", "O1"),
    ("L2", "O1"),
    ("L2", "O2"),
    ("L3", "O2"),
)


def verify_hasse() -> dict:
    """Check the expected lattice: structures, inclusions, non-inclusions and
    the defining matrix identities D = S^2, S^-1 T S = T D, S^-1 P S = (TDT)^-1 P (TDT)."""
    lattice = operation_lattice()
    failures = []
    expected_structure = {"L1": "V4", "L2": "V4", "L3": "Sym(3)",
                          "O1": "D8", "O2": "D12"}
    sets = {name: {m.entries for m in info["elements"]}
            for name, info in lattice.items()}
    for name, want in expected_structure.items():
        got = lattice[name]["structure"]
        if got != want:
            failures.append(f"{name}: structure {got}, expected {want}")
    for lo, hi in HASSE_EDGES:
        if not sets[lo] <= sets[hi]:
            failures.append(f"{lo} not contained in {hi}")
    for lo, hi in (("L1", "O2"), ("L3", "O1")):
        if sets[lo] <= sets[hi]:
            failures.append(f"unexpected containment {lo} <= {hi}")
    s_inv = _matrix_inverse_in(MAT_S)
    tdt = MAT_T @ MAT_D @ MAT_T
    identities = [
        ((MAT_S @ MAT_S).entries, MAT_D.entries, "D = S^2"),
        ((s_inv @ MAT_T @ MAT_S).entries, (MAT_T @ MAT_D).entries,
         "S^-1 T S = T D"),
        ((s_inv @ MAT_P @ MAT_S).entries,
         (_matrix_inverse_in(tdt) @ MAT_P @ tdt).entries,
         "S^-1 P S = (TDT)^-1 P (TDT)"),
    ]
    for got, want, label in identities:
        if got != want:
            failures.append(f"identity failed: {label}")
    return {"ok": not failures, "failures": failures, "lattice": lattice}


def _matrix_inverse_in(m: IntMatrix) -> IntMatrix:
    p = m
    prev = MAT_I
    for _ in range(64):
        if p.entries == MAT_I.entries:
            return prev
        prev = p
        p = p @ m
    raise OperationError("no inverse found within order cap")


# ---------------------------------------------------------------------------
# Acting on hypermaps
# ---------------------------------------------------------------------------

def apply_operation(s: GenSubstitution, h: AlgebraicHypermap) -> AlgebraicHypermap:
    """The image hypermap (G, s_x(x, y), s_y(x, y)).

    When h carries a presentation, the image inherits one by rewriting each
    relator through the inverse substitution.
    """
    new_x = evaluate_word(s.image_x, (h.x, h.y))
    new_y = evaluate_word(s.image_y, (h.x, h.y))
    new_source = None
    if h.source is not None:
        rewritten = tuple(r.substitute((s.inverse_x, s.inverse_y))
                          for r in h.source.relators)
        new_source = Presentation(2, tuple(r for r in rewritten if r.letters))
    return AlgebraicHypermap(h.group, new_x, new_y, source=new_source)


def is_invariant(h: AlgebraicHypermap, s: GenSubstitution) -> bool:
    """Whether the operation fixes the hypermap up to isomorphism.

    Tests whether x -> s_x(x, y), y -> s_y(x, y) extends to an automorphism
    of the group; the images always generate, so checking the relators of h
    on them suffices.
    """
    if h.source is None:
        raise OperationError("hypermap carries no presentation")
    ix = evaluate_word(s.image_x, (h.x, h.y))
    iy = evaluate_word(s.image_y, (h.x, h.y))
    ident = identity_perm(h.group.degree)
    if any(evaluate_word(r, (ix, iy)) != ident for r in h.source.relators):
        return False
    img = subgroup_generated(h.group.degree, (ix, iy), h.group.element_cap)
    return img.order == h.order
