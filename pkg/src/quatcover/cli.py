"""Command-line front end.

Subcommands: enumerate, verify-tables, smoke, inspect, metacyclic, ops-hasse.
Exit codes: 0 = all checks pass, 1 = a verification failed, 2 = resource or
configuration error.  Discrepancy flags are reported but do not fail a run.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from math import gcd, lcm

from .census import (
    CensusError,
    CoveringOctuple,
    MetacyclicParams,
    bicyclic32_presentation,
    compute_record,
    enumerate_census,
    genus17_presentation,
    GROUP_SYMMETRY_CAP,
    metacyclic16_presentation,
    metacyclic_group,
    nilpotency_audit,
    predicted_type_genus,
    quaternion_presentation,
    tetrahedral_presentation,
    validate_octuple,
)
from .fpgroup import (
    CosetLimitError,
    Word,
    automorphism_count,
    evaluate_word,
    generating_pairs,
    pmul,
)
from .hypermap import (
    AlgebraicHypermap,
    covering_report,
    hypermap_from_presentation,
    hypermaps_isomorphic,
    kernel_subgroup,
)
from . import operations as ops

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_CONFIG = 2


@dataclass(frozen=True)
class ReportItem:
    item: str
    status: str  # pass | fail | flagged-discrepancy
    details: str = ""

    def line(self) -> str:
        return f"[{self.status}] {self.item}" + (f": {self.details}" if self.details else "")


def _exit_code(items: list[ReportItem]) -> int:
    return EXIT_FAIL if any(it.status == "fail" for it in items) else EXIT_OK


def _check(items: list[ReportItem], item: str, ok: bool, details: str = ""):
    items.append(ReportItem(item, "pass" if ok else "fail", details))


# ---------------------------------------------------------------------------
# enumerate
# ---------------------------------------------------------------------------

def cmd_enumerate(args, out=sys.stdout) -> int:
    records = enumerate_census(args.max_mnd, jobs=args.jobs,
                               max_cosets=args.max_cosets)
    lines = []
    if args.format == "jsonl":
        for rec in records:
            lines.append(json.dumps(rec.as_dict()))
    else:
        from .census import CensusRecord
        keys = CensusRecord.JSONL_KEYS
        lines.append("\t".join(keys))
        for rec in records:
            d = rec.as_dict()
            lines.append("\t".join(
                ",".join(map(str, d[k])) if isinstance(d[k], list) else str(d[k])
                for k in keys))
    text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        out.write(text)
    bad = sum(1 for rec in records if not rec.consistent)
    if bad:
        print(f"{bad} inconsistent record(s)", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify-tables
# ---------------------------------------------------------------------------

def _table1_rows(bound: int):
    """d = 1 coverings with all residues trivial, by parity of (m, n)."""
    for m in range(1, bound + 1):
        for n in range(1, bound + 1):
            o = CoveringOctuple(m, n, 1, 1, 1, 1, 1, 1)
            if m % 2 and n % 2:
                cls, t = "i", (4 * m, 4 * n, 4 * lcm(m, n))
                g = 4 * m * n - m - n - gcd(m, n) + 1
            elif m % 2:
                cls, t = "ii", (4 * m, 2 * n, 4 * lcm(m, n // 2))
                g = 4 * m * n - 2 * m - n - 2 * gcd(m, n // 2) + 1
            elif n % 2:
                cls, t = "iii", (2 * m, 4 * n, 4 * lcm(m // 2, n))
                g = 4 * m * n - m - 2 * n - 2 * gcd(m // 2, n) + 1
            else:
                cls, t = "iv", (2 * m, 2 * n, 4 * lcm(m // 2, n // 2))
                g = 4 * m * n - 2 * m - 2 * n - 4 * gcd(m // 2, n // 2) + 1
            yield f"table1.{cls} m={m} n={n}", o, t, g, None


def _table2_rows(bound: int):
    """Coverings branched over hyperfaces; rows viii and x compute smooth."""
    for d in range(1, bound + 1):
        if d % 2:
            yield (f"table2.i d={d}",
                   CoveringOctuple(1, 1, d, -1, -1, -1, -1, -1),
                   (4, 4, 4 * d), 2 * d, None)
        if d % 2 == 0:
            yield (f"table2.ii d={d}",
                   CoveringOctuple(1, 1, d, -1, -1, -1, -1, -1),
                   (4, 4, 2 * d), 2 * d - 1, None)
            if d >= 4 and d % 4 == 0:
                yield (f"table2.iii d={d}",
                       CoveringOctuple(1, 1, d, -1, -1, -1, -1, d // 2 - 1),
                       (4, 4, 2 * d), 2 * d - 1, None)
            elif d >= 4:
                # for d = 2 mod 4 the stated epsilon = d/2 - 1 is even, hence
                # not invertible mod d and the row has no valid instance
                yield (f"table2.iii d={d}", None, (4, 4, 2 * d), 2 * d - 1,
                       "epsilon = d/2 - 1 is not a unit mod d; no valid octuple")
            yield (f"table2.iv d={d}",
                   CoveringOctuple(2, 2, d, d - 1, d - 1, d - 1, -1, -1),
                   (4, 4, 4 * d), 8 * d - 3, None)
            yield (f"table2.vi d={d}",
                   CoveringOctuple(2, 2, d, d - 1, -1, -1, d - 1, -1),
                   (4, 4, 4 * d), 8 * d - 3, None)
            yield (f"table2.vii d={d}",
                   CoveringOctuple(2, 2, d, -1, d - 1, d - 1, d - 1, -1),
                   (4, 4, 4 * d), 8 * d - 3, None)
        if d >= 2:
            yield (f"table2.v d={d}",
                   CoveringOctuple(2, 2, d, -1, -1, -1, -1, -1),
                   (4, 4, 4 * d), 8 * d - 3, None)
        if d >= 3 and d % 2:
            yield (f"table2.ix d={d}",
                   CoveringOctuple(1, 2, d, -1, -1, -1, -1, (d - 1) // 2),
                   (4, 4, 4 * d), 4 * d - 1, None)
            yield (f"table2.xi d={d}",
                   CoveringOctuple(2, 1, d, -1, -1, -1, -1, -2),
                   (4, 4, 4 * d), 4 * d - 1, None)
    yield ("table2.viii", CoveringOctuple(1, 2, 1, 1, 1, 1, 1, 1),
           (4, 4, 4), 3, "computed smooth at hyperfaces (r = 1)")
    yield ("table2.x", CoveringOctuple(2, 1, 1, 1, 1, 1, 1, 1),
           (4, 4, 4), 3, "computed smooth at hyperfaces (r = 1)")


def _table3_rows(bound: int):
    """Coverings branched over hyperedges."""
    for m in range(1, bound + 1):
        if m % 2:
            yield (f"table3.i m={m}", CoveringOctuple(m, 1, 1, -1, 1, 1, 1, 1),
                   (4, 4 * m, 4), 2 * m, None)
            yield (f"table3.iv m={m}", CoveringOctuple(m, 2, 1, -1, 1, 1, 1, 1),
                   (4, 4 * m, 4), 4 * m - 1, None)
        else:
            yield (f"table3.ii m={m}", CoveringOctuple(m, 1, 1, -1, 1, 1, 1, 1),
                   (4, 2 * m, 4), 2 * m - 1, None)
            yield (f"table3.v m={m}", CoveringOctuple(m, 2, 1, -1, 1, 1, 1, 1),
                   (4, 2 * m, 4), 4 * m - 3,
                   "table states m odd; computed data requires m even")
        yield (f"table3.iii m={m}", CoveringOctuple(m, 1, 2, -1, 1, 1, 1, 1),
               (4, 4 * m, 4), 4 * m - 1, None)


def _table4_rows(bound: int):
    """Coverings branched over hypervertices."""
    for n in range(1, bound + 1):
        if n % 2:
            yield (f"table4.i n={n}", CoveringOctuple(1, n, 1, 1, 1, 1, -1, 1),
                   (4 * n, 4, 4), 2 * n, None)
            yield (f"table4.iv n={n}", CoveringOctuple(2, n, 1, 1, 1, 1, -1, 1),
                   (4 * n, 4, 4), 4 * n - 1, None)
        else:
            yield (f"table4.ii n={n}", CoveringOctuple(1, n, 1, 1, 1, 1, -1, 1),
                   (2 * n, 4, 4), 2 * n - 1, None)
            yield (f"table4.v n={n}", CoveringOctuple(2, n, 1, 1, 1, 1, -1, 1),
                   (2 * n, 4, 4), 4 * n - 3, None)
        yield (f"table4.iii n={n}", CoveringOctuple(1, n, 2, 1, 1, 1, -1, 1),
               (4 * n, 4, 4), 4 * n - 1, None)


TABLE_GENERATORS = {1: _table1_rows, 2: _table2_rows, 3: _table3_rows,
                    4: _table4_rows}


def verify_table(table: int, bound: int) -> list[ReportItem]:
    items: list[ReportItem] = []
    for item, o, want_type, want_genus, flag in TABLE_GENERATORS[table](bound):
        if o is None:
            items.append(ReportItem(item, "flagged-discrepancy", flag or ""))
            continue
        rep = validate_octuple(o)
        if not rep.ok:
            items.append(ReportItem(item, "fail",
                                    "invalid octuple: " + "; ".join(rep.failures)))
            continue
        got_type, got_genus = predicted_type_genus(o)
        ok = got_type == tuple(want_type) and got_genus == want_genus
        status = "fail" if not ok else ("flagged-discrepancy" if flag else "pass")
        details = (f"type {got_type} genus {got_genus}"
                   + (f" -- {flag}" if flag and ok else "")
                   + ("" if ok else f", expected {tuple(want_type)} / {want_genus}"))
        items.append(ReportItem(item, status, details))
    return items


def cmd_verify_tables(args) -> int:
    tables = [args.table] if args.table else [1, 2, 3, 4]
    items: list[ReportItem] = []
    for t in tables:
        items.extend(verify_table(t, args.bound))
    for it in items:
        print(it.line())
    return _exit_code(items)


# ---------------------------------------------------------------------------
# smoke
# ---------------------------------------------------------------------------

def smoke_battery(max_cosets: int = 100_000) -> list[ReportItem]:
    items: list[ReportItem] = []

    q8 = hypermap_from_presentation(quaternion_presentation(), max_cosets)
    _check(items, "quaternion order", q8.order == 8, str(q8.order))
    _check(items, "quaternion type/genus",
           q8.type_of() == (4, 4, 4) and q8.genus_of() == 2,
           f"{q8.type_of()} genus {q8.genus_of()}")
    invariant = all(ops.is_invariant(q8, s)
                    for s in ops.builtin_operations().values())
    _check(items, "quaternion totally symmetric", invariant)

    m16p = metacyclic16_presentation()
    m16 = hypermap_from_presentation(m16p, max_cosets)
    _check(items, "metacyclic-16 order", m16.order == 16, str(m16.order))
    npairs = generating_pairs(m16.group)
    nauts = automorphism_count(m16.group, m16p)
    _check(items, "metacyclic-16 generating pairs", npairs == 96, str(npairs))
    _check(items, "metacyclic-16 automorphisms", nauts == 32, str(nauts))
    _check(items, "metacyclic-16 hypermap classes", npairs // nauts == 3,
           str(npairs // nauts))
    h1 = m16
    h2 = AlgebraicHypermap(m16.group, m16.y, m16.x)
    h3 = AlgebraicHypermap(m16.group, m16.y, pmul(m16.x, m16.y))
    tau_h1 = ops.apply_operation(ops.tau, h1)
    _check(items, "metacyclic-16 transposition swaps first two classes",
           hypermaps_isomorphic(tau_h1, h2) and not ops.is_invariant(h1, ops.tau))
    _check(items, "metacyclic-16 transposition fixes third class",
           _pair_extends(h3, ops.tau))
    fixed_all = all(_pair_extends(h, s)
                    for h in (h1, h2, h3) for s in (ops.pi, ops.iota))
    _check(items, "metacyclic-16 Petrie/mirror fix all classes", fixed_all)

    b32 = hypermap_from_presentation(bicyclic32_presentation(), max_cosets)
    _check(items, "order-32 cover order", b32.order == 32, str(b32.order))
    rep = covering_report(b32, q8)
    K32 = kernel_subgroup(b32, q8)
    factors = _abelian_factors(K32)
    _check(items, "order-32 cover kernel",
           rep.is_covering and rep.kernel_abelian and factors == (2, 2),
           f"kernel invariant factors {factors}")
    audit = nilpotency_audit(b32.group, _kernel_cyclic_parts(b32))
    _check(items, "order-32 cover kernel class",
           audit.within_bound and audit.nilpotency_class == 1,
           f"class {audit.nilpotency_class}")
    _check(items, "order-32 cover quotient", _quotient_is(b32, quaternion_presentation(), 8))

    g17 = hypermap_from_presentation(genus17_presentation(), max_cosets)
    tet = hypermap_from_presentation(tetrahedral_presentation(), max_cosets)
    _check(items, "genus-17 cover order", g17.order == 96, str(g17.order))
    _check(items, "genus-17 cover genus", g17.genus_of() == 17, str(g17.genus_of()))
    rep17 = covering_report(g17, tet)
    _check(items, "genus-17 covering of tetrahedral map",
           rep17.is_covering and rep17.kernel_order == 8
           and rep17.smooth_edges and not rep17.smooth_vertices
           and not rep17.smooth_faces,
           f"kernel order {rep17.kernel_order}")
    K = kernel_subgroup(g17, tet)
    is_q8 = _isomorphic_to_quaternion(K)
    _check(items, "genus-17 kernel is the quaternion group", is_q8,
           f"order {K.order}")
    parts = _genus17_parts(g17)
    audit17 = nilpotency_audit(g17.group, parts)
    _check(items, "genus-17 kernel class two",
           audit17.within_bound and audit17.nilpotency_class == 2,
           f"class {audit17.nilpotency_class}")
    _check(items, "genus-17 quotient is Alt(4)",
           _quotient_is(g17, tetrahedral_presentation(), 12))
    return items


def _pair_extends(h: AlgebraicHypermap, s) -> bool:
    """Whether (h.x, h.y) -> (s_x(h.x, h.y), s_y(h.x, h.y)) extends to an
    automorphism of the group, i.e. the operation fixes the hypermap class.

    Works without a presentation on h: the candidate map is propagated along
    words in (h.x, h.y) and verified multiplicative on all element pairs.
    """
    G = h.group
    ix = evaluate_word(s.image_x, (h.x, h.y))
    iy = evaluate_word(s.image_y, (h.x, h.y))
    from .fpgroup import homomorphism_map
    phi = homomorphism_map(G, (h.x, h.y), (ix, iy))
    if len(phi) != G.order or len(set(phi.values())) != len(phi):
        return False
    elems = list(phi)
    return all(phi[pmul(a, b)] == pmul(phi[a], phi[b])
               for a in elems for b in elems)


def _abelian_factors(K) -> tuple[int, ...]:
    from .fpgroup import abelian_invariants
    return abelian_invariants(K)


def _kernel_cyclic_parts(h: AlgebraicHypermap):
    u = evaluate_word(Word((1, -2, 1, 2)), (h.x, h.y))
    v = evaluate_word(Word((2, -1, 2, 1)), (h.x, h.y))
    return [u, v]


def _genus17_parts(g17: AlgebraicHypermap):
    x, y = Word((1,)), Word((2,))
    z = (x * y).inverse()
    u = evaluate_word((x ** 3).free_reduce(), (g17.x, g17.y))
    v = evaluate_word((z ** 3).free_reduce(), (g17.x, g17.y))
    return [u, v]


def _quotient_is(cover: AlgebraicHypermap, base_pres, base_order: int) -> bool:
    """The quotient of the cover by its covering kernel is the base group."""
    base = hypermap_from_presentation(base_pres)
    rep = covering_report(cover, base)
    return rep.is_covering and base.order == base_order


def _isomorphic_to_quaternion(K) -> bool:
    from .fpgroup import isomorphic_by_generator_search
    return isomorphic_by_generator_search(quaternion_presentation(), 8, K)


def cmd_smoke(args) -> int:
    items = smoke_battery(args.max_cosets)
    for it in items:
        print(it.line())
    return _exit_code(items)


# ---------------------------------------------------------------------------
# inspect
# ---------------------------------------------------------------------------

def cmd_inspect(args) -> int:
    o = CoveringOctuple(args.m, args.n, args.d, args.alpha, args.beta,
                        args.gamma, args.delta, args.epsilon)
    rep = validate_octuple(o)
    print(f"octuple {o.key()}")
    if not rep.ok:
        for f in rep.failures:
            print(f"[fail] {f}")
        return EXIT_FAIL
    print("[pass] all congruence conditions hold")
    rec = compute_record(o, args.max_cosets,
                         group_symmetry=o.group_order <= GROUP_SYMMETRY_CAP)
    for key, value in rec.as_dict().items():
        print(f"{key}: {value}")
    s = rec.symmetry
    print(f"omega1_invariant: {int(s.omega1_invariant)}")
    print(f"completely_self_dual: {int(s.completely_self_dual)}")
    print(f"mho_invariant: {int(s.mho_invariant)}")
    return EXIT_OK if rec.consistent else EXIT_FAIL


# ---------------------------------------------------------------------------
# metacyclic
# ---------------------------------------------------------------------------

def cmd_metacyclic(args) -> int:
    try:
        mp = MetacyclicParams(args.p, args.a, args.b, args.c, args.d)
    except ValueError as exc:
        print(f"[fail] {exc}")
        return EXIT_CONFIG
    report = metacyclic_group(mp, args.max_cosets)
    print(f"order: {report.order}")
    print(f"derived_subgroup_order: {report.derived_order}")
    print(f"derived_subgroup_cyclic: {int(report.derived_is_cyclic)}")
    print(f"abelianization: {list(report.abelianization)}")
    print(f"nilpotency_class: {report.nilpotency_class}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# ops-hasse
# ---------------------------------------------------------------------------

def cmd_ops_hasse(args) -> int:
    result = ops.verify_hasse()
    for name, info in sorted(result["lattice"].items()):
        print(f"{name}: order {info['order']} structure {info['structure']}")
    for lo, hi in ops.HASSE_EDGES:
        print(f"edge: {lo} < {hi}")
    status = "pass" if result["ok"] else "fail"
    print(f"[{status}] lattice structures, containments and matrix identities")
    for f in result["failures"]:
        print(f"[fail] {f}")
    return EXIT_OK if result["ok"] else EXIT_FAIL


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quatcover",
        description="Classify abelian normalized bicyclic coverings of the "
                    "quaternion hypermap.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--max-cosets", type=int, default=100_000)

    p = sub.add_parser("enumerate", help="write the census of valid octuples")
    p.add_argument("--max-mnd", type=int, default=8)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--format", choices=("jsonl", "tsv"), default="jsonl")
    p.add_argument("--out", default=None)
    add_common(p)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("verify-tables", help="re-derive the classification tables")
    p.add_argument("--table", type=int, choices=(1, 2, 3, 4), default=None)
    p.add_argument("--bound", type=int, default=8)
    add_common(p)
    p.set_defaults(func=cmd_verify_tables)

    p = sub.add_parser("smoke", help="run the fixed example battery")
    add_common(p)
    p.set_defaults(func=cmd_smoke)

    p = sub.add_parser("inspect", help="full report for a single octuple")
    for name in ("m", "n", "d", "alpha", "beta", "gamma", "delta", "epsilon"):
        p.add_argument(name, type=int)
    add_common(p)
    p.set_defaults(func=cmd_inspect)

    p = sub.add_parser("metacyclic", help="build a metacyclic two-parameter group")
    for name in ("p", "a", "b", "c", "d"):
        p.add_argument(name, type=int)
    add_common(p)
    p.set_defaults(func=cmd_metacyclic)

    p = sub.add_parser("ops-hasse", help="verify the operation-group lattice")
    add_common(p)
    p.set_defaults(func=cmd_ops_hasse)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "jobs", 1) < 1 or getattr(args, "max_mnd", 1) < 1 \
            or args.max_cosets < 1:
        print("invalid configuration", file=sys.stderr)
        return EXIT_CONFIG
    try:
        return args.func(args)
    except CosetLimitError as exc:
        print(f"resource error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except CensusError as exc:
        print(f"verification error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
