"""Exact integer-matrix arithmetic: Smith normal form, finite abelian groups
given by relation matrices, and modular unit tests.

Everything here works over plain Python integers, so there is no overflow to
guard against; all reductions are exact.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd, lcm, prod


class IntLatticeError(Exception):
    pass


class InfiniteQuotientError(IntLatticeError):
    """The relation lattice is not of full rank, so the quotient is infinite."""

    def __init__(self, free_rank: int):
        self.free_rank = free_rank
        super().__init__(f"quotient has free rank {free_rank}")


@dataclass(frozen=True)
class IntMatrix:
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        widths = {len(row) for row in self.entries}
        if len(widths) > 1:
            raise ValueError("ragged matrix")

    @staticmethod
    def from_rows(rows) -> "IntMatrix":
        return IntMatrix(tuple(tuple(int(a) for a in row) for row in rows))

    @staticmethod
    def identity(n: int) -> "IntMatrix":
        return IntMatrix(tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError("dimension mismatch")
        return IntMatrix(tuple(
            tuple(sum(self.entries[i][k] * other.entries[k][j] for k in range(self.cols))
                  for j in range(other.cols))
            for i in range(self.rows)))

    def det(self) -> int:
        """Exact determinant by cofactor expansion (small matrices only)."""
        if self.rows != self.cols:
            raise ValueError("determinant of non-square matrix")
        n = self.rows
        if n == 0:
            return 1
        if n == 1:
            return self.entries[0][0]
        total = 0
        for j in range(n):
            a = self.entries[0][j]
            if a == 0:
                continue
            minor = IntMatrix(tuple(row[:j] + row[j + 1:] for row in self.entries[1:]))
            total += (-1) ** j * a * minor.det()
        return total


@dataclass(frozen=True)
class SnfResult:
    U: IntMatrix
    S: IntMatrix
    V: IntMatrix

    @property
    def diagonal(self) -> tuple[int, ...]:
        k = min(self.S.rows, self.S.cols)
        return tuple(self.S[i, i] for i in range(k))


def smith_normal_form(A: IntMatrix) -> SnfResult:
    """Return unimodular U, V and diagonal S with U*A*V = S.

    The diagonal entries are nonnegative and form a divisibility chain.
    Pivot choice (minimal absolute value, ties broken by lowest row then
    column) makes the output deterministic.
    """
    m, n = A.rows, A.cols
    s = [list(row) for row in A.entries]
    u = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    v = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        s[i], s[j] = s[j], s[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in s:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, q):
        # row dst += q * row src
        s[dst] = [a + q * b for a, b in zip(s[dst], s[src])]
        u[dst] = [a + q * b for a, b in zip(u[dst], u[src])]

    def add_col(src, dst, q):
        for row in s:
            row[dst] += q * row[src]
        for row in v:
            row[dst] += q * row[src]

    def negate_row(i):
        s[i] = [-a for a in s[i]]
        u[i] = [-a for a in u[i]]

    for t in range(min(m, n)):
        while True:
            pivot = None
            for i in range(t, m):
                for j in range(t, n):
                    a = abs(s[i][j])
                    if a and (pivot is None or a < pivot[0]):
                        pivot = (a, i, j)
            if pivot is None:
                break
            _, pi, pj = pivot
            if pi != t:
                swap_rows(t, pi)
            if pj != t:
                swap_cols(t, pj)
            if s[t][t] < 0:
                negate_row(t)
            p = s[t][t]
            dirty = False
            for i in range(t + 1, m):
                if s[i][t]:
                    add_row(t, i, -(s[i][t] // p))
                    if s[i][t]:
                        dirty = True
            for j in range(t + 1, n):
                if s[t][j]:
                    add_col(t, j, -(s[t][j] // p))
                    if s[t][j]:
                        dirty = True
            if dirty:
                continue
            # pivot cleared its row and column; enforce divisibility
            offender = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if s[i][j] % p:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            add_row(offender, t, 1)

    return SnfResult(IntMatrix.from_rows(u), IntMatrix.from_rows(s), IntMatrix.from_rows(v))


@dataclass(frozen=True)
class AbElement:
    coords: tuple[int, ...]


class FinAbGroup:
    """Finite abelian group Z^n / (row lattice), canonicalized by SNF.

    ``invariant_factors`` is the divisibility chain of factors > 1; elements
    live in the product of the corresponding residue rings.  Exponent vectors
    over the original generators are mapped to canonical coordinates through
    the SNF column transform.
    """

    def __init__(self, num_gens: int, relations):
        rows = [tuple(row) for row in relations]
        for row in rows:
            if len(row) != num_gens:
                raise ValueError("relation width differs from generator count")
        if not rows:
            rows = [(0,) * num_gens]
        snf = smith_normal_form(IntMatrix.from_rows(rows))
        diag = list(snf.diagonal) + [0] * (num_gens - min(len(rows), num_gens))
        diag = diag[:num_gens]
        free = sum(1 for d in diag if d == 0)
        if free:
            raise InfiniteQuotientError(free)
        self.num_gens = num_gens
        self._columns = [i for i, d in enumerate(diag) if d > 1]
        self.invariant_factors = tuple(diag[i] for i in self._columns)
        self._v = snf.V
        self.order = prod(self.invariant_factors)

    def element(self, exponents) -> AbElement:
        """Canonical coordinates of a word with the given generator exponents."""
        exponents = tuple(exponents)
        if len(exponents) != self.num_gens:
            raise ValueError("exponent vector width mismatch")
        coords = []
        for f, col in zip(self.invariant_factors, self._columns):
            coords.append(sum(e * self._v[j, col] for j, e in enumerate(exponents)) % f)
        return AbElement(tuple(coords))

    def generator(self, j: int) -> AbElement:
        return self.element(tuple(1 if i == j else 0 for i in range(self.num_gens)))

    def add(self, a: AbElement, b: AbElement) -> AbElement:
        return AbElement(tuple((x + y) % f for x, y, f in
                               zip(a.coords, b.coords, self.invariant_factors)))

    def scale(self, k: int, a: AbElement) -> AbElement:
        return AbElement(tuple((k * x) % f for x, f in zip(a.coords, self.invariant_factors)))

    @property
    def zero(self) -> AbElement:
        return AbElement((0,) * len(self.invariant_factors))

    def cyclic_subgroup(self, a: AbElement) -> set[AbElement]:
        seen = {self.zero}
        g = a
        while g not in seen:
            seen.add(g)
            g = self.add(g, a)
        return seen

    def is_cyclic(self) -> bool:
        return len(self.invariant_factors) <= 1


def abgroup_from_relations(num_gens: int, relations) -> FinAbGroup:
    return FinAbGroup(num_gens, relations)


def element_order(G: FinAbGroup, g: AbElement) -> int:
    return lcm(1, *(f // gcd(f, c) for f, c in zip(G.invariant_factors, g.coords)))


def is_unit(a: int, n: int) -> bool:
    if n < 1:
        raise ValueError("modulus must be positive")
    return gcd(a % n, n) == 1


def lattice_index_bruteforce(rows) -> int:
    """Independent oracle: index of the row lattice L in Z^n by counting.

    Smith form is used only to obtain a modulus D with D*Z^n contained in L;
    the index itself comes from an additive closure in (Z_D)^n: the image of
    L there has size D^n / [Z^n : L].  Only meant for small test instances.
    """
    rows = [tuple(row) for row in rows]
    n = len(rows[0])
    diag = [d for d in smith_normal_form(IntMatrix.from_rows(rows)).diagonal if d]
    if len(diag) < n:
        raise InfiniteQuotientError(n - len(diag))
    D = prod(diag)
    if D == 1:
        return 1
    gens = [tuple(a % D for a in row) for row in rows]
    seen = {(0,) * n}
    frontier = [(0,) * n]
    while frontier:
        point = frontier.pop()
        for g in gens:
            nxt = tuple((a + b) % D for a, b in zip(point, g))
            if nxt not in seen:
                seen.add(nxt)
                frontier.append(nxt)
    image_size = len(seen)
    assert D ** n % image_size == 0
    return D ** n // image_size
