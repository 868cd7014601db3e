"""Classification engine for abelian normalized bicyclic coverings of the
quaternion hypermap.

Every covering in the family is encoded by an octuple (m, n, d, alpha, beta,
gamma, delta, epsilon) of integer parameters subject to five congruence
conditions.  The engine validates octuples, predicts the type and genus of
the covering from an abstract model of the abelian kernel K = <u, v>,
constructs the actual group by coset enumeration, and cross-checks the two
against each other.  Symmetry and branching behaviour are computed twice as
well: once from congruences on the parameters, once from the group itself.
"""
from __future__ import annotations

import concurrent.futures
from dataclasses import dataclass, replace
from fractions import Fraction
from math import gcd

from .fpgroup import (
    CosetLimitError,
    DEFAULT_MAX_COSETS,
    PermGroup,
    Presentation,
    Word,
    evaluate_word,
    identity_perm,
    lower_central_series,
    pinv,
    pmul,
    porder,
    regular_representation,
    subgroup_generated,
    todd_coxeter,
)
from .hypermap import AlgebraicHypermap, fingerprint_name, walsh_fingerprint
from .intlattice import FinAbGroup, element_order, is_unit
from . import operations as ops


class CensusError(Exception):
    pass


class ClassificationBugError(CensusError):
    """A machine-checked theorem failed: prediction and construction disagree."""


class InvalidOctupleError(CensusError):
    pass


# ---------------------------------------------------------------------------
# Reference presentations (two generators x, y)
# ---------------------------------------------------------------------------

_X = Word((1,))
_Y = Word((2,))
U_WORD = (_X * _Y.inverse() * _X * _Y).free_reduce()   # u = x y^-1 x y
V_WORD = (_Y * _X.inverse() * _Y * _X).free_reduce()   # v = y x^-1 y x


def quaternion_presentation() -> Presentation:
    """The quaternion group on the generating pair realizing type (4,4,4)."""
    return Presentation(2, (((_X * _Y) ** 4).free_reduce(), U_WORD, V_WORD))


def quaternion_hypermap() -> AlgebraicHypermap:
    from .hypermap import hypermap_from_presentation

    return hypermap_from_presentation(quaternion_presentation())


def metacyclic16_presentation() -> Presentation:
    """<x, y | x^4, y^4, x^y = x^-1>, the order-16 metacyclic group."""
    return Presentation(2, (_X ** 4, _Y ** 4,
                            (_Y.inverse() * _X * _Y * _X).free_reduce()))


def bicyclic32_presentation() -> Presentation:
    """<x, y | x^4, y^4, (xy)^4, [x, y^2], [y, x^2]>, order 32."""
    def comm(a: Word, b: Word) -> Word:
        return (a.inverse() * b.inverse() * a * b).free_reduce()

    return Presentation(2, (_X ** 4, _Y ** 4, ((_X * _Y) ** 4).free_reduce(),
                            comm(_X, _Y ** 2), comm(_Y, _X ** 2)))


def genus17_presentation() -> Presentation:
    """The order-96 group covering the tetrahedral map, written on x, y with
    z = (xy)^-1 eliminated."""
    z = (_X * _Y).inverse()
    rels = (
        _X ** 12,
        _Y ** 2,
        (z ** 12).free_reduce(),
        (z.inverse() * _X ** 3 * z * _X ** -9).free_reduce(),
        (_X.inverse() * z ** 3 * _X * z ** -9).free_reduce(),
        (z ** 6 * _X ** -6).free_reduce(),
    )
    return Presentation(2, rels)


def tetrahedral_presentation() -> Presentation:
    """<x, y | x^3, y^2, (xy)^3> = Alt(4), the tetrahedral map."""
    return Presentation(2, (_X ** 3, _Y ** 2, ((_X * _Y) ** 3).free_reduce()))


def alt4_presentation() -> Presentation:
    return tetrahedral_presentation()


# ---------------------------------------------------------------------------
# Octuples
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CoveringOctuple:
    """Parameters (m, n, d; alpha, beta, gamma, delta, epsilon).

    alpha, beta are residues mod m*d; gamma, delta residues mod n*d; epsilon
    a residue mod d.  Residues are normalized into [0, modulus); for modulus
    1 the unique residue 0 stands for the conventional value 1.
    """
    m: int
    n: int
    d: int
    alpha: int
    beta: int
    gamma: int
    delta: int
    epsilon: int

    def __post_init__(self):
        if min(self.m, self.n, self.d) < 1:
            raise InvalidOctupleError("m, n, d must be positive")
        md, nd = self.m * self.d, self.n * self.d
        object.__setattr__(self, "alpha", self.alpha % md)
        object.__setattr__(self, "beta", self.beta % md)
        object.__setattr__(self, "gamma", self.gamma % nd)
        object.__setattr__(self, "delta", self.delta % nd)
        object.__setattr__(self, "epsilon", self.epsilon % self.d)

    @property
    def md(self) -> int:
        return self.m * self.d

    @property
    def nd(self) -> int:
        return self.n * self.d

    @property
    def mnd(self) -> int:
        return self.m * self.n * self.d

    @property
    def group_order(self) -> int:
        return 8 * self.mnd

    def key(self) -> tuple[int, ...]:
        return (self.m, self.n, self.d, self.alpha, self.beta,
                self.gamma, self.delta, self.epsilon)


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    failures: tuple[str, ...]


def validate_octuple(o: CoveringOctuple) -> ValidationReport:
    """Check the five congruence condition groups, naming each failure."""
    md, nd, d = o.md, o.nd, o.d
    failures = []
    if not (is_unit(o.alpha, md) and is_unit(o.beta, md)):
        failures.append("units: alpha, beta must be invertible mod m*d")
    if not (is_unit(o.gamma, nd) and is_unit(o.delta, nd)):
        failures.append("units: gamma, delta must be invertible mod n*d")
    if not is_unit(o.epsilon, d):
        failures.append("units: epsilon must be invertible mod d")
    if (o.alpha ** 2 - 1) % md or (o.delta ** 2 - 1) % nd:
        failures.append("cond1: alpha^2 = 1 mod m*d and delta^2 = 1 mod n*d")
    if (o.beta ** 2 - 1) % md or (o.gamma ** 2 - 1) % nd:
        failures.append("cond2: beta^2 = 1 mod m*d and gamma^2 = 1 mod n*d")
    cond3 = (o.beta - 1) % o.m == 0 and (o.gamma - 1) % o.n == 0
    if not cond3:
        failures.append("cond3: beta = 1 mod m and gamma = 1 mod n")
    if (o.alpha - o.gamma) % d or (o.beta - o.delta) % d:
        failures.append("cond4: alpha = gamma and beta = delta mod d")
    if cond3:
        # exact integer quotients, guaranteed by cond3
        if (((o.beta - 1) // o.m) * o.epsilon + (o.gamma - 1) // o.n) % d:
            failures.append(
                "cond5: ((beta-1)/m)*epsilon + (gamma-1)/n = 0 mod d")
    else:
        failures.append("cond5: not evaluable (cond3 failed)")
    return ValidationReport(not failures, tuple(failures))


def lemma_num_check(o: CoveringOctuple) -> bool:
    """Derived congruences that must hold on every valid octuple:
    (alpha+1)(beta-1) = 0 mod m*d and (delta+1)(gamma-1) = 0 mod n*d."""
    return ((o.alpha + 1) * (o.beta - 1)) % o.md == 0 and \
        ((o.delta + 1) * (o.gamma - 1)) % o.nd == 0


def k_model(o: CoveringOctuple) -> FinAbGroup:
    """Abstract model of K = <u, v>: u^(md) = v^(nd) = 1, u^m = v^(n*epsilon)."""
    return FinAbGroup(2, [(o.md, 0), (0, o.nd), (o.m, -o.n * o.epsilon)])


def _pqr(o: CoveringOctuple, K: FinAbGroup | None = None) -> tuple[int, int, int]:
    K = K or k_model(o)
    p = element_order(K, K.element((o.alpha + 1, o.gamma - o.delta)))
    q = element_order(K, K.element((o.beta - o.alpha, o.delta + 1)))
    r = element_order(K, K.element((o.alpha + 1, o.gamma + o.delta)))
    return p, q, r


def predicted_type_genus(o: CoveringOctuple) -> tuple[tuple[int, int, int], int]:
    """Type (4p, 4q, 4r) and genus mnd*(4 - 1/p - 1/q - 1/r) + 1, where p, q, r
    are the orders of x^4, y^4, (xy)^4 read off inside the kernel model."""
    p, q, r = _pqr(o)
    g = o.mnd * (4 - Fraction(1, p) - Fraction(1, q) - Fraction(1, r)) + 1
    if g.denominator != 1:
        raise ClassificationBugError(f"non-integral genus {g} for {o.key()}")
    return (4 * p, 4 * q, 4 * r), int(g)


# ---------------------------------------------------------------------------
# Construction by coset enumeration
# ---------------------------------------------------------------------------

def _balanced(k: int, modulus: int) -> int:
    """Residue of k in (-modulus/2, modulus/2], keeping relator words short."""
    k %= modulus
    return k - modulus if k > modulus // 2 else k


def covering_presentations(o: CoveringOctuple) -> tuple[Presentation, Presentation]:
    """Presentations of the covering group: on (x, y, u, v) for enumeration,
    and on (x, y) alone (u, v eliminated) as the hypermap's source."""
    x, y = Word((1,)), Word((2,))
    u, v = Word((3,)), Word((4,))
    md, nd, d = o.md, o.nd, o.d

    def upow(k): return u ** _balanced(k, md)
    def vpow(k): return v ** _balanced(k, nd)

    rels4 = [
        (u.inverse() * U_WORD).free_reduce(),
        (v.inverse() * V_WORD).free_reduce(),
        u ** md,
        v ** nd,
        (u ** o.m * vpow(-o.n * o.epsilon)).free_reduce(),
        (x ** 4 * upow(-(o.alpha + 1)) * vpow(o.delta - o.gamma)).free_reduce(),
        (y ** 4 * upow(o.alpha - o.beta) * vpow(-(o.delta + 1))).free_reduce(),
        ((x * y) ** 4 * upow(-(o.alpha + 1)) * vpow(-(o.gamma + o.delta))).free_reduce(),
        (x.inverse() * u * x * upow(-o.alpha)).free_reduce(),
        (y.inverse() * u * y * upow(-o.beta)).free_reduce(),
        (x.inverse() * v * x * vpow(-o.gamma)).free_reduce(),
        (y.inverse() * v * y * vpow(-o.delta)).free_reduce(),
        (u.inverse() * v.inverse() * u * v).free_reduce(),
    ]
    four_gen = Presentation(4, tuple(r for r in rels4 if r.letters))
    subs = (x, y, U_WORD, V_WORD)
    two_gen = Presentation(
        2, tuple(dict.fromkeys(r.substitute(subs) for r in four_gen.relators
                               if r.substitute(subs).letters)))
    return four_gen, two_gen


@dataclass(frozen=True)
class CoveringData:
    octuple: CoveringOctuple
    hypermap: AlgebraicHypermap
    u: tuple[int, ...]
    v: tuple[int, ...]
    kernel_model: FinAbGroup
    kernel_group: PermGroup


def build_covering(o: CoveringOctuple, max_cosets: int = DEFAULT_MAX_COSETS,
                   check: bool = True) -> CoveringData:
    """Construct the covering group and verify every structural postcondition.

    Raises ClassificationBugError if the built group disagrees with the
    parameter-level predictions in any way.
    """
    report = validate_octuple(o)
    if not report.ok:
        raise InvalidOctupleError("; ".join(report.failures))
    four_gen, two_gen = covering_presentations(o)
    ct = todd_coxeter(four_gen, (), max_cosets)
    gx, gy, gu, gv = (ct.generator_permutation(i) for i in (1, 2, 3, 4))
    G = PermGroup(ct.num_cosets, (gx, gy, gu, gv), known_order=ct.num_cosets)
    h = AlgebraicHypermap(G, gx, gy, source=two_gen)
    K = subgroup_generated(G.degree, (gu, gv))
    data = CoveringData(o, h, gu, gv, k_model(o), K)
    if check:
        _check_postconditions(data, max_cosets)
    return data


def _check_postconditions(data: CoveringData, max_cosets: int):
    o, h, gu, gv = data.octuple, data.hypermap, data.u, data.v
    bug = ClassificationBugError
    if h.order != o.group_order:
        raise bug(f"{o.key()}: order {h.order}, expected {o.group_order}")
    if porder(gu) != o.md or porder(gv) != o.nd:
        raise bug(f"{o.key()}: wrong orders of u, v")
    K = data.kernel_group
    if K.order != o.mnd or not K.is_abelian():
        raise bug(f"{o.key()}: K has order {K.order}, expected abelian {o.mnd}")
    cu = _cyclic_set(gu)
    cv = _cyclic_set(gv)
    if len(cu & cv) != o.d:
        raise bug(f"{o.key()}: |<u> cap <v>| = {len(cu & cv)}, expected {o.d}")
    # power identities: x^4 = u^(alpha+1) v^(gamma-delta) etc.
    xw = evaluate_word(Word((1,)) ** 4, (h.x, h.y))
    yw = evaluate_word(Word((2,)) ** 4, (h.x, h.y))
    zw = evaluate_word((Word((1,)) * Word((2,))) ** 4, (h.x, h.y))
    for got, eu, ev, label in (
            (xw, o.alpha + 1, o.gamma - o.delta, "x^4"),
            (yw, o.beta - o.alpha, o.delta + 1, "y^4"),
            (zw, o.alpha + 1, o.gamma + o.delta, "(xy)^4")):
        want = evaluate_word((Word((1,)) ** eu * Word((2,)) ** ev).free_reduce(),
                             (gu, gv))
        if got != want:
            raise bug(f"{o.key()}: power identity {label} fails")
    if not quotient_is_quaternion(o, max_cosets):
        raise bug(f"{o.key()}: G/K is not the quaternion group")


def _cyclic_set(p) -> set:
    out = set()
    q = identity_perm(len(p))
    while q not in out:
        out.add(q)
        q = pmul(q, p)
    return out


def quotient_is_quaternion(o: CoveringOctuple, max_cosets: int = DEFAULT_MAX_COSETS) -> bool:
    """G/<u, v> computed by re-enumerating with u = v = 1 killed."""
    four_gen, _ = covering_presentations(o)
    killed = Presentation(4, four_gen.relators + (Word((3,)), Word((4,))))
    ct = todd_coxeter(killed, (), max_cosets)
    if ct.num_cosets != 8:
        return False
    qx = ct.generator_permutation(1)
    qy = ct.generator_permutation(2)
    ident = identity_perm(8)
    return all(evaluate_word(r, (qx, qy)) == ident
               for r in quaternion_presentation().relators)


# ---------------------------------------------------------------------------
# Symmetry profiles
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SymmetryProfile:
    reflexible: bool
    symmetric: bool
    self_petrie: bool
    triply_self_dual: bool

    @property
    def omega1_invariant(self) -> bool:
        return self.symmetric and self.self_petrie

    @property
    def completely_self_dual(self) -> bool:
        return self.symmetric and self.triply_self_dual

    @property
    def mho_invariant(self) -> bool:
        return self.symmetric and self.self_petrie and self.triply_self_dual

    def base_flags(self) -> tuple[bool, bool, bool, bool]:
        return (self.reflexible, self.symmetric, self.self_petrie,
                self.triply_self_dual)


def symmetry_profile_congruence(o: CoveringOctuple) -> SymmetryProfile:
    """Symmetry flags read off the parameters alone."""
    md, d = o.md, o.d
    a, b, g_, dl, e = o.alpha, o.beta, o.gamma, o.delta, o.epsilon
    reflexible = (b - g_) % d == 0
    symmetric = (o.m == o.n and (a - dl) % md == 0 and (b - g_) % md == 0
                 and (e * e - 1) % d == 0)
    self_petrie = (a + 1) % d == 0
    triply = (o.m == o.n
              and (g_ - (a + b - 1)) % md == 0
              and (dl - a) % md == 0
              and (a - b) % o.m == 0
              and ((a - b) * e - (a - 1)) % md == 0
              and (e * e + (2 - a) * e + a) % d == 0)
    return SymmetryProfile(reflexible, symmetric, self_petrie, triply)


GROUP_SYMMETRY_CAP = 400


def symmetry_profile_group(o: CoveringOctuple,
                           data: CoveringData | None = None,
                           max_cosets: int = DEFAULT_MAX_COSETS) -> SymmetryProfile:
    """Symmetry flags computed on the constructed group by testing whether
    each operation's generator substitution extends to an automorphism."""
    if o.group_order > GROUP_SYMMETRY_CAP:
        raise CensusError(
            f"group order {o.group_order} above cap {GROUP_SYMMETRY_CAP}")
    if data is None:
        data = build_covering(o, max_cosets)
    h = data.hypermap
    return SymmetryProfile(
        reflexible=ops.is_invariant(h, ops.iota),
        symmetric=ops.is_invariant(h, ops.tau),
        self_petrie=ops.is_invariant(h, ops.pi),
        triply_self_dual=ops.is_invariant(h, ops.theta),
    )


# ---------------------------------------------------------------------------
# Branch profiles
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BranchProfile:
    p: int
    q: int
    r: int

    @property
    def smooth_v(self) -> bool:
        return self.p == 1

    @property
    def smooth_e(self) -> bool:
        return self.q == 1

    @property
    def smooth_f(self) -> bool:
        return self.r == 1

    @property
    def smooth(self) -> bool:
        return self.p == self.q == self.r == 1


def branch_profile(o: CoveringOctuple) -> BranchProfile:
    """Branching data, with the necessary smoothness congruences re-checked
    as machine-verified theorems whenever a smooth flag is set."""
    p, q, r = _pqr(o)
    prof = BranchProfile(p, q, r)
    m, n, d = o.m, o.n, o.d
    a, b, g_, dl, e = o.alpha, o.beta, o.gamma, o.delta, o.epsilon

    def exact(num: int, den: int, label: str) -> int:
        if num % den:
            raise ClassificationBugError(
                f"{o.key()}: smoothness congruence {label}: "
                f"{num} not divisible by {den}")
        return num // den

    if prof.smooth_v:
        if (a + 1) % m or (dl - 1) % n:
            raise ClassificationBugError(f"{o.key()}: smooth-vertex congruence fails")
        if (exact(a + 1, m, "v") * e + exact(g_ - dl, n, "v")) % d:
            raise ClassificationBugError(f"{o.key()}: smooth-vertex sum congruence fails")
    if prof.smooth_e:
        if (a - 1) % m or (dl + 1) % n:
            raise ClassificationBugError(f"{o.key()}: smooth-edge congruence fails")
        if (exact(b - a, m, "e") * e + exact(dl + 1, n, "e")) % d:
            raise ClassificationBugError(f"{o.key()}: smooth-edge sum congruence fails")
    if prof.smooth_f:
        if (a + 1) % m or (dl + 1) % n:
            raise ClassificationBugError(f"{o.key()}: smooth-face congruence fails")
        if (exact(a + 1, m, "f") * e + exact(g_ + dl, n, "f")) % d:
            raise ClassificationBugError(f"{o.key()}: smooth-face sum congruence fails")
    return prof


# ---------------------------------------------------------------------------
# Enumeration
# ---------------------------------------------------------------------------

def _sqrt1(modulus: int) -> list[int]:
    return [a for a in range(modulus) if (a * a - 1) % modulus == 0] or [0]


def iter_valid_octuples(max_mnd: int):
    """All valid octuples with m*n*d <= max_mnd, lexicographically ordered by
    (m, n, d, alpha, beta, gamma, delta, epsilon)."""
    if max_mnd < 1:
        raise ValueError("max_mnd must be >= 1")
    for m in range(1, max_mnd + 1):
        for n in range(1, max_mnd // m + 1):
            for d in range(1, max_mnd // (m * n) + 1):
                md, nd = m * d, n * d
                for alpha in _sqrt1(md):
                    for beta in _sqrt1(md):
                        if (beta - 1) % m:
                            continue
                        for gamma in _sqrt1(nd):
                            if (gamma - 1) % n or (alpha - gamma) % d:
                                continue
                            for delta in _sqrt1(nd):
                                if (beta - delta) % d:
                                    continue
                                for eps in range(d):
                                    o = CoveringOctuple(m, n, d, alpha, beta,
                                                        gamma, delta, eps)
                                    if validate_octuple(o).ok:
                                        yield o


@dataclass(frozen=True)
class CensusRecord:
    octuple: CoveringOctuple
    group_order: int
    type: tuple[int, int, int]
    genus: int
    predicted_type: tuple[int, int, int]
    predicted_genus: int
    symmetry: SymmetryProfile
    branch: BranchProfile
    k_invariant_factors: tuple[int, ...]
    fingerprint: str
    consistent: bool
    error: str = ""

    JSONL_KEYS = ("m", "n", "d", "alpha", "beta", "gamma", "delta", "epsilon",
                  "group_order", "type", "genus", "predicted_type",
                  "predicted_genus", "reflexible", "symmetric", "self_petrie",
                  "triply_self_dual", "smooth_v", "smooth_e", "smooth_f",
                  "k_invariant_factors", "fingerprint", "consistent")

    def as_dict(self) -> dict:
        o, s, b = self.octuple, self.symmetry, self.branch
        return {
            "m": o.m, "n": o.n, "d": o.d,
            "alpha": o.alpha, "beta": o.beta, "gamma": o.gamma,
            "delta": o.delta, "epsilon": o.epsilon,
            "group_order": self.group_order,
            "type": list(self.type),
            "genus": self.genus,
            "predicted_type": list(self.predicted_type),
            "predicted_genus": self.predicted_genus,
            "reflexible": int(s.reflexible),
            "symmetric": int(s.symmetric),
            "self_petrie": int(s.self_petrie),
            "triply_self_dual": int(s.triply_self_dual),
            "smooth_v": int(b.smooth_v),
            "smooth_e": int(b.smooth_e),
            "smooth_f": int(b.smooth_f),
            "k_invariant_factors": list(self.k_invariant_factors),
            "fingerprint": self.fingerprint,
            "consistent": int(self.consistent),
        }


def compute_record(o: CoveringOctuple, max_cosets: int = DEFAULT_MAX_COSETS,
                   group_symmetry: bool = True) -> CensusRecord:
    """Full census record for one valid octuple.

    Resource failures are captured in the record rather than raised;
    classification bugs (prediction != construction) are hard errors.
    """
    predicted_type, predicted_genus = predicted_type_genus(o)
    symmetry = symmetry_profile_congruence(o)
    branch = branch_profile(o)
    K = k_model(o)
    if not lemma_num_check(o):
        raise ClassificationBugError(f"{o.key()}: derived congruences fail")
    try:
        data = build_covering(o, max_cosets)
    except CosetLimitError as exc:
        return CensusRecord(o, 0, (0, 0, 0), -1, predicted_type,
                            predicted_genus, symmetry, branch,
                            K.invariant_factors, "", False, error=str(exc))
    h = data.hypermap
    computed_type = h.type_of()
    computed_genus = h.genus_of()
    consistent = (computed_type == predicted_type
                  and computed_genus == predicted_genus)
    if not consistent:
        raise ClassificationBugError(
            f"{o.key()}: computed {computed_type} genus {computed_genus}, "
            f"predicted {predicted_type} genus {predicted_genus}")
    if group_symmetry and o.group_order <= GROUP_SYMMETRY_CAP:
        observed = symmetry_profile_group(o, data)
        if observed.base_flags() != symmetry.base_flags():
            raise ClassificationBugError(
                f"{o.key()}: symmetry congruences {symmetry.base_flags()} "
                f"disagree with group {observed.base_flags()}")
    fingerprint = fingerprint_name(walsh_fingerprint(h))
    return CensusRecord(o, h.order, computed_type, computed_genus,
                        predicted_type, predicted_genus, symmetry, branch,
                        K.invariant_factors, fingerprint, True)


def _record_worker(args) -> CensusRecord:
    key, max_cosets, group_symmetry = args
    return compute_record(CoveringOctuple(*key), max_cosets, group_symmetry)


def enumerate_census(max_mnd: int, jobs: int = 1,
                     max_cosets: int = DEFAULT_MAX_COSETS,
                     group_symmetry: bool = True) -> list[CensusRecord]:
    """Census records for every valid octuple with m*n*d <= max_mnd.

    Deterministic regardless of the worker count: octuples are generated in
    lexicographic order and results merged in submission order.
    """
    octuples = list(iter_valid_octuples(max_mnd))
    args = [(o.key(), max_cosets, group_symmetry) for o in octuples]
    if jobs <= 1:
        return [_record_worker(a) for a in args]
    with concurrent.futures.ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_record_worker, args, chunksize=8))


def smooth_covers(max_mnd: int, **kwargs) -> list[CensusRecord]:
    """The census records that are smooth over vertices, edges and faces."""
    return [rec for rec in enumerate_census(max_mnd, **kwargs)
            if rec.branch.smooth]


# ---------------------------------------------------------------------------
# Special families
# ---------------------------------------------------------------------------

def k1_octuple(m: int) -> CoveringOctuple:
    """K1(m) = (m, m, 1; 1, 1, 1, 1, 1): K isomorphic to Z_m x Z_m."""
    return CoveringOctuple(m, m, 1, 1, 1, 1, 1, 1)


def k2_octuple(m: int) -> CoveringOctuple:
    """K2(m) = (m, m, 3; 1, 1, 1, 1, 1): d = 3 with epsilon = d - 2 = 1."""
    return CoveringOctuple(m, m, 3, 1, 1, 1, 1, 1)


def omega1_family_check(o: CoveringOctuple) -> bool:
    """Numerical conditions for membership in the one-parameter family of
    coverings invariant under both transposition and Petrie duality:
    requires m = n, gamma = beta and delta = alpha mod m*d, plus the condition
    list on (alpha, beta, epsilon)."""
    if o.m != o.n:
        return False
    md, d = o.md, o.d
    a, b, e = o.alpha, o.beta, o.epsilon
    if (o.gamma - b) % md or (o.delta - a) % md:
        return False
    return ((a * a - 1) % md == 0
            and (b * b - 1) % md == 0
            and ((b - 1) * (e + 1)) % md == 0
            and (b - 1) % o.m == 0
            and (b + 1) % d == 0
            and (a - b) % d == 0
            and (e * e - 1) % d == 0)


@dataclass(frozen=True)
class FamilyReport:
    octuple: CoveringOctuple
    record: CensusRecord
    completely_self_dual: bool
    mho_invariant: bool
    varsigma_invariant: bool
    omega1_member: bool


def special_families(m: int, max_cosets: int = DEFAULT_MAX_COSETS) -> dict[str, FamilyReport]:
    """Build and audit K1(m) and K2(m)."""
    out = {}
    for name, o in (("K1", k1_octuple(m)), ("K2", k2_octuple(m))):
        rec = compute_record(o, max_cosets,
                             group_symmetry=o.group_order <= GROUP_SYMMETRY_CAP)
        data = build_covering(o, max_cosets)
        varsigma_ok = (o.group_order <= GROUP_SYMMETRY_CAP
                       and ops.is_invariant(data.hypermap, ops.varsigma))
        s = rec.symmetry
        out[name] = FamilyReport(
            octuple=o,
            record=rec,
            completely_self_dual=s.completely_self_dual,
            mho_invariant=s.mho_invariant,
            varsigma_invariant=varsigma_ok,
            omega1_member=omega1_family_check(o),
        )
    return out


# ---------------------------------------------------------------------------
# Metacyclic two-parameter-chain groups and nilpotency audits
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MetacyclicParams:
    p: int
    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if self.p < 2 or any(x < 0 for x in (self.a, self.b, self.c, self.d)):
            raise ValueError("need a prime p and nonnegative exponents")
        if not (self.d <= self.c <= self.a + self.d <= self.b + self.d):
            raise ValueError("exponent chain 0 <= d <= c <= a+d <= b+d violated")

    @property
    def order(self) -> int:
        return self.p ** (self.a + self.b + self.c)


@dataclass(frozen=True)
class MetacyclicReport:
    params: MetacyclicParams
    group: PermGroup
    u: tuple[int, ...]
    v: tuple[int, ...]
    order: int
    derived_order: int
    derived_is_cyclic: bool
    abelianization: tuple[int, ...]
    nilpotency_class: int

    def invariant_vector(self) -> tuple:
        """(|K|, |K'|, abelianization, element-order census).

        The order census is included because (|K|, |K'|, abelianization) alone
        does not separate all parameter chains.
        """
        return (self.order, self.derived_order, self.abelianization,
                self.order_census)

    @property
    def order_census(self) -> tuple[tuple[int, int], ...]:
        counts: dict[int, int] = {}
        for g in self.group.elements:
            o = porder(g)
            counts[o] = counts.get(o, 0) + 1
        return tuple(sorted(counts.items()))


def metacyclic_presentation(mp: MetacyclicParams) -> Presentation:
    """u^(p^(a+c)) = v^(p^(b+c)) = 1, u^(p^a) = v^(p^b),
    u^v = u^(1+p^(a+d)), v^u = v^(1-p^(b+d))."""
    p, a, b, c, d = mp.p, mp.a, mp.b, mp.c, mp.d
    u, v = Word((1,)), Word((2,))
    ou, ov = p ** (a + c), p ** (b + c)
    rels = [
        u ** ou,
        v ** ov,
        (u ** (p ** a) * v ** -(p ** b)).free_reduce(),
        (v.inverse() * u * v * u ** -((1 + p ** (a + d)) % ou)).free_reduce(),
        (u.inverse() * v * u * v ** -((1 - p ** (b + d)) % ov)).free_reduce(),
    ]
    return Presentation(2, tuple(r for r in rels if r.letters))


def metacyclic_group(mp: MetacyclicParams,
                     max_cosets: int = DEFAULT_MAX_COSETS) -> MetacyclicReport:
    """Build the group and verify order, derived subgroup and abelianization."""
    pres = metacyclic_presentation(mp)
    G, (gu, gv) = regular_representation(pres, max_cosets)
    p, a, b, c, d = mp.p, mp.a, mp.b, mp.c, mp.d
    if G.order != mp.order:
        raise ClassificationBugError(
            f"metacyclic {mp}: order {G.order}, expected {mp.order}")
    comm = pmul(pmul(pinv(gu), pinv(gv)), pmul(gu, gv))
    from .fpgroup import normal_closure
    derived = normal_closure(G, [comm])
    want_derived = p ** (c - d)
    u_power = evaluate_word(Word((1,)) ** (p ** (a + d)), (gu, gv))
    if derived.order != want_derived:
        raise ClassificationBugError(
            f"metacyclic {mp}: |K'| = {derived.order}, expected {want_derived}")
    cyc = _cyclic_set(u_power)
    derived_cyclic = len(cyc) == derived.order and cyc == set(derived.elements)
    if not derived_cyclic:
        raise ClassificationBugError(
            f"metacyclic {mp}: K' is not generated by u^(p^(a+d))")
    from .intlattice import abgroup_from_relations
    rows = []
    for r in pres.relators:
        e = [0, 0]
        for letter in r.letters:
            e[abs(letter) - 1] += 1 if letter > 0 else -1
        rows.append(e)
    ab = abgroup_from_relations(2, rows)
    want_ab = tuple(f for f in sorted((p ** a, p ** (b + d))) if f > 1)
    if ab.invariant_factors != want_ab:
        raise ClassificationBugError(
            f"metacyclic {mp}: abelianization {ab.invariant_factors}, "
            f"expected {want_ab}")
    series = lower_central_series(G)
    if series[-1].order != 1:
        raise ClassificationBugError(f"metacyclic {mp}: group is not nilpotent")
    return MetacyclicReport(mp, G, gu, gv, G.order, derived.order,
                            derived_cyclic, ab.invariant_factors,
                            len(series) - 1 if G.order > 1 else 0)


@dataclass(frozen=True)
class NilpotencyReport:
    subgroup_order: int
    parts_normal: bool
    nilpotency_class: int
    class_bound: int

    @property
    def within_bound(self) -> bool:
        return self.parts_normal and self.nilpotency_class <= self.class_bound


def nilpotency_audit(G: PermGroup, normal_cyclic_parts) -> NilpotencyReport:
    """Audit a subgroup K that is a product of cyclic subgroups, each normal
    in G: K must be nilpotent of class at most the number of parts."""
    parts = [tuple(u) for u in normal_cyclic_parts]
    normal = True
    for u in parts:
        cyc = _cyclic_set(u)
        for g in G.generators:
            gi = pinv(g)
            if any(pmul(pmul(gi, s), g) not in cyc for s in cyc):
                normal = False
    K = subgroup_generated(G.degree, parts, G.element_cap)
    series = lower_central_series(K)
    if series[-1].order != 1:
        raise CensusError("audited subgroup is not nilpotent")
    cls = len(series) - 1 if K.order > 1 else 0
    return NilpotencyReport(K.order, normal, max(cls, 1) if K.order > 1 else 0,
                            len(parts))
