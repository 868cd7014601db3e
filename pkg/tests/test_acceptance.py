"""Acceptance gate: one test (and one pass/fail line under ``pytest -v``)
per top-level acceptance criterion.

Two criteria carry flagged discrepancies, asserted as the computed truth:

* criterion 4: the order-32 smooth cover's Walsh graph is the twin-doubled
  8-cycle C8[2K1], not the 4-dimensional hypercube (walk counts differ:
  trace(A^4) is 768 versus 640, and the graph has twin vertices, which Q4
  does not).
* criterion 9: distinct metacyclic parameter chains can give isomorphic
  groups, so only the forward direction holds: distinct invariant vectors
  imply non-isomorphic groups, and every vector collision is a genuine
  isomorphism.
"""

import itertools
import math
import random
import time

from quatcover import operations as ops
from quatcover.census import (
    MetacyclicParams,
    build_covering,
    enumerate_census,
    iter_valid_octuples,
    lemma_num_check,
    metacyclic_group,
    metacyclic_presentation,
    quaternion_presentation,
    smooth_covers,
    symmetry_profile_congruence,
    symmetry_profile_group,
)
from quatcover.cli import smoke_battery, verify_table
from quatcover.fpgroup import isomorphic_by_generator_search, todd_coxeter
from quatcover.hypermap import (
    hypercube_matrix,
    hypermap_from_presentation,
    multiplicity_matrices_isomorphic,
    walsh_fingerprint,
)
from quatcover.intlattice import IntMatrix, smith_normal_form


def test_criterion_01_quaternion_smoke():
    start = time.monotonic()
    ct = todd_coxeter(quaternion_presentation())
    assert ct.num_cosets == 8
    h = hypermap_from_presentation(quaternion_presentation())
    assert h.type_of() == (4, 4, 4)
    assert h.genus_of() == 2
    for s in ops.builtin_operations().values():
        assert ops.is_invariant(h, s), s.name
    assert time.monotonic() - start < 1.0


def test_criterion_02_construction_sweep_mnd48(sweep48):
    assert len(sweep48) > 0
    for rec in sweep48:
        o = rec.octuple
        # construction enforced order 8mnd, |K| = mnd and G/K = Q8 as hard
        # postconditions; a record only reaches here if they all held
        assert rec.consistent, o.key()
        assert rec.error == ""
        assert rec.group_order == 8 * o.mnd
        assert rec.type == rec.predicted_type
        assert rec.genus == rec.predicted_genus
    keys = [rec.octuple.key() for rec in sweep48]
    assert keys == [o.key() for o in iter_valid_octuples(48)]


def test_criterion_03_symmetry_oracle_agreement_mnd24(sweep48):
    checked = 0
    for rec in sweep48:
        if rec.octuple.mnd > 24:
            continue
        congruence = symmetry_profile_congruence(rec.octuple)
        group = symmetry_profile_group(rec.octuple)
        assert congruence.base_flags() == group.base_flags(), rec.octuple.key()
        checked += 1
    assert checked > 1000


def test_criterion_04_smooth_covers():
    records = smooth_covers(4)
    assert len(records) == 5
    nontrivial = sorted((rec for rec in records if rec.octuple.mnd > 1),
                        key=lambda rec: rec.octuple.key())
    assert sorted(rec.genus for rec in nontrivial) == [3, 3, 3, 5]
    fingerprints = sorted(rec.fingerprint for rec in nontrivial)
    # flagged discrepancy: the order-32 cover's Walsh graph is the
    # twin-doubled 8-cycle, not the 4-dimensional hypercube
    assert fingerprints == ["C8[2]", "C8^2", "K(4,4)", "K(4,4)"]
    big = next(rec for rec in nontrivial if rec.genus == 5)
    walsh = walsh_fingerprint(build_covering(big.octuple).hypermap)
    assert multiplicity_matrices_isomorphic(walsh, hypercube_matrix(4)) is False


def test_criterion_05_tables():
    expected_flags = {
        "table2.iii d=6", "table2.viii", "table2.x",
        "table3.v m=2", "table3.v m=4", "table3.v m=6", "table3.v m=8",
    }
    flagged = set()
    for table in (1, 2, 3, 4):
        for item in verify_table(table, 8):
            assert item.status != "fail", (item.item, item.details)
            if item.status == "flagged-discrepancy":
                flagged.add(item.item)
    assert flagged == expected_flags


def test_criterion_06_metacyclic16_hypermap_classes():
    items = [it for it in smoke_battery() if it.item.startswith("metacyclic-16")]
    assert len(items) == 7
    failures = [it for it in items if it.status != "pass"]
    assert not failures, failures


def test_criterion_07_section4_examples():
    wanted = ("order-32 cover", "genus-17")
    items = [it for it in smoke_battery()
             if it.item.startswith(wanted)]
    assert len(items) == 10
    failures = [it for it in items if it.status != "pass"]
    assert not failures, failures


def test_criterion_08_operation_lattice():
    start = time.monotonic()
    result = ops.verify_hasse()
    assert result["ok"], result["failures"]
    orders = {name: info["order"] for name, info in result["lattice"].items()}
    assert orders == {"O1": 8, "O2": 12, "L1": 4, "L2": 4, "L3": 6}
    assert time.monotonic() - start < 1.0


def test_criterion_09_metacyclic_parameter_chains():
    reports = {}
    for p in (2, 3):
        for a, b, c, d in itertools.product(range(3), repeat=4):
            if not (d <= c <= a + d <= b + d):
                continue
            mp = MetacyclicParams(p, a, b, c, d)
            # metacyclic_group hard-verifies |G| = p^(a+b+c),
            # K' = Z_(p^(c-d)) and abelianization Z_(p^a) x Z_(p^(b+d))
            reports[(p, a, b, c, d)] = metacyclic_group(mp)
    assert len(reports) > 40
    q8 = reports[(2, 1, 1, 1, 0)]
    assert isomorphic_by_generator_search(quaternion_presentation(), 8, q8.group)
    # flagged discrepancy: distinct chains may collide; every collision of
    # invariant vectors must be a genuine group isomorphism
    by_vector = {}
    for key, rep in reports.items():
        by_vector.setdefault(rep.invariant_vector(), []).append(key)
    collisions = [keys for keys in by_vector.values() if len(keys) > 1]
    assert collisions, "expected invariant-vector collisions"
    for keys in collisions:
        first = reports[keys[0]]
        for other in keys[1:]:
            assert isomorphic_by_generator_search(
                metacyclic_presentation(MetacyclicParams(*keys[0])),
                first.order, reports[other].group), (keys[0], other)


def test_criterion_10_property_suites(sweep48):
    # Smith normal form identities on 1000 random small matrices
    rng = random.Random(1234)
    for _ in range(1000):
        rows, cols = rng.randint(1, 4), rng.randint(1, 4)
        A = IntMatrix.from_rows(
            [[rng.randint(-9, 9) for _ in range(cols)] for _ in range(rows)])
        snf = smith_normal_form(A)
        assert (snf.U @ A @ snf.V).entries == snf.S.entries
        assert snf.U.det() in (1, -1) and snf.V.det() in (1, -1)
    # derived congruences and smoothness assertions over the deep sweep
    for rec in sweep48:
        o = rec.octuple
        assert lemma_num_check(o)
        assert ((o.alpha + 1) * (o.beta - 1)) % o.md == 0
        assert ((o.delta + 1) * (o.gamma - 1)) % o.nd == 0
        if rec.branch.smooth_v:
            assert (o.alpha + 1) % o.m == 0 and (o.delta - 1) % o.n == 0
        if rec.branch.smooth_e:
            assert (o.alpha - 1) % o.m == 0 and (o.delta + 1) % o.n == 0
        if rec.branch.smooth_f:
            assert (o.alpha + 1) % o.m == 0 and (o.delta + 1) % o.n == 0
        # K is cyclic exactly when gcd(m, n) = 1
        assert (len(rec.k_invariant_factors) <= 1) == (math.gcd(o.m, o.n) == 1)
    # determinism across worker counts
    serial = enumerate_census(8, jobs=1)
    parallel = enumerate_census(8, jobs=4)
    assert [r.as_dict() for r in serial] == [r.as_dict() for r in parallel]
