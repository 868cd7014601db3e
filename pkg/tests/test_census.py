import itertools

import pytest

from quatcover.census import (
    CoveringOctuple,
    InvalidOctupleError,
    MetacyclicParams,
    branch_profile,
    build_covering,
    compute_record,
    enumerate_census,
    iter_valid_octuples,
    k1_octuple,
    k2_octuple,
    lemma_num_check,
    metacyclic_group,
    nilpotency_audit,
    omega1_family_check,
    predicted_type_genus,
    quaternion_presentation,
    quotient_is_quaternion,
    smooth_covers,
    special_families,
    symmetry_profile_congruence,
    symmetry_profile_group,
    validate_octuple,
)
from quatcover.fpgroup import isomorphic_by_generator_search
from quatcover.hypermap import hypermaps_isomorphic


# ---------------------------------------------------------------------------
# octuple validation
# ---------------------------------------------------------------------------

def test_trivial_octuple_is_valid():
    o = CoveringOctuple(1, 1, 1, 1, 1, 1, 1, 1)
    assert validate_octuple(o).ok
    assert o.group_order == 8
    assert predicted_type_genus(o) == ((4, 4, 4), 2)


def test_validation_names_failing_condition():
    rep = validate_octuple(CoveringOctuple(2, 1, 2, 1, 3, 1, 1, 1))
    assert not rep.ok
    assert any(f.startswith("cond5") for f in rep.failures)


def test_validation_rejects_non_units():
    rep = validate_octuple(CoveringOctuple(1, 1, 4, 2, 1, 1, 1, 1))
    assert not rep.ok
    assert any(f.startswith("units") for f in rep.failures)


def test_octuple_normalizes_residues():
    o = CoveringOctuple(3, 2, 1, -1, 1, 1, -1, 0)
    assert (o.alpha, o.delta) == (2, 1)
    with pytest.raises(InvalidOctupleError):
        CoveringOctuple(0, 1, 1, 1, 1, 1, 1, 1)


def test_enumeration_counts_are_frozen():
    for bound, count in ((1, 1), (2, 4), (4, 24), (8, 125)):
        assert sum(1 for _ in iter_valid_octuples(bound)) == count
    with pytest.raises(ValueError):
        next(iter_valid_octuples(0))


def test_enumeration_matches_exhaustive_residue_sweep():
    """Independent oracle: sweep all residue tuples without the square-root
    shortcuts and compare against the pruned enumerator."""
    fast = set(o.key() for o in iter_valid_octuples(8))
    slow = set()
    for m in range(1, 9):
        for n in range(1, 9):
            if m * n > 8:
                continue
            for d in range(1, 8 // (m * n) + 1):
                md, nd = m * d, n * d
                for a, b in itertools.product(range(md), repeat=2):
                    for g, dl in itertools.product(range(nd), repeat=2):
                        for e in range(d):
                            o = CoveringOctuple(m, n, d, a, b, g, dl, e)
                            if validate_octuple(o).ok:
                                slow.add(o.key())
    assert fast == slow


def test_derived_congruences_hold_on_valid_octuples():
    for o in iter_valid_octuples(8):
        assert lemma_num_check(o)


# ---------------------------------------------------------------------------
# predictions
# ---------------------------------------------------------------------------

def test_predicted_type_genus_samples():
    # odd m, n with d = 1 and trivial residues
    assert predicted_type_genus(CoveringOctuple(1, 3, 1, 1, 1, 1, 1, 1)) == \
        ((4, 12, 12), 8)
    # hyperedge-branched family at odd m
    assert predicted_type_genus(CoveringOctuple(3, 1, 1, -1, 1, 1, 1, 1)) == \
        ((4, 12, 4), 6)
    # hyperface-branched family at odd d
    assert predicted_type_genus(CoveringOctuple(1, 1, 3, -1, -1, -1, -1, -1)) == \
        ((4, 4, 12), 6)


def test_branch_profile():
    b = branch_profile(CoveringOctuple(2, 2, 1, 1, 1, 1, 1, 0))
    assert (b.p, b.q, b.r) == (1, 1, 1)
    assert b.smooth
    b = branch_profile(CoveringOctuple(3, 1, 1, -1, 1, 1, 1, 1))
    assert b.smooth_v and b.smooth_f and not b.smooth_e


# ---------------------------------------------------------------------------
# construction
# ---------------------------------------------------------------------------

def test_build_covering_order32():
    data = build_covering(CoveringOctuple(2, 2, 1, 1, 1, 1, 1, 0))
    assert data.hypermap.order == 32
    assert data.kernel_group.order == 4
    assert data.kernel_group.is_abelian()
    assert data.kernel_model.invariant_factors == (2, 2)


def test_build_covering_rejects_invalid():
    with pytest.raises(InvalidOctupleError):
        build_covering(CoveringOctuple(2, 1, 2, 1, 3, 1, 1, 1))


def test_quotient_is_quaternion():
    assert quotient_is_quaternion(CoveringOctuple(1, 2, 1, 1, 1, 1, 1, 1))


def test_compute_record_consistency():
    rec = compute_record(CoveringOctuple(1, 1, 2, 1, 1, 1, 1, 1))
    assert rec.consistent
    assert rec.group_order == 16
    assert rec.type == rec.predicted_type
    assert rec.genus == rec.predicted_genus
    d = rec.as_dict()
    assert list(d) == list(rec.JSONL_KEYS)
    assert d["consistent"] == 1


# ---------------------------------------------------------------------------
# symmetry
# ---------------------------------------------------------------------------

def test_symmetry_profiles_small():
    s = symmetry_profile_congruence(k1_octuple(2))
    assert s.base_flags() == (True, True, True, True)
    assert s.mho_invariant and s.completely_self_dual and s.omega1_invariant
    o = CoveringOctuple(2, 1, 1, 1, 1, 1, 1, 0)
    s = symmetry_profile_congruence(o)
    assert s.reflexible and s.self_petrie
    assert not s.symmetric  # m != n
    g = symmetry_profile_group(o)
    assert g.base_flags() == s.base_flags()


def test_smooth_covers_bound_four(sweep48):
    records = smooth_covers(4)
    assert len(records) == 5
    by_key = {rec.octuple.key(): rec for rec in records}
    assert set(by_key) == {
        (1, 1, 1, 0, 0, 0, 0, 0),
        (1, 1, 2, 1, 1, 1, 1, 1),
        (1, 2, 1, 0, 0, 1, 1, 0),
        (2, 1, 1, 1, 1, 0, 0, 0),
        (2, 2, 1, 1, 1, 1, 1, 0),
    }
    genera = sorted(rec.genus for rec in records)
    assert genera == [2, 3, 3, 3, 5]
    # no further smooth covers hide anywhere in the deep sweep's small range
    deep_smooth = [rec for rec in sweep48
                   if rec.branch.smooth and rec.octuple.mnd <= 4]
    assert len(deep_smooth) == 5


# ---------------------------------------------------------------------------
# special families
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("m", (1, 2, 3))
def test_special_family_k1(m):
    fams = special_families(m)
    rep = fams["K1"]
    assert rep.record.group_order == 8 * m * m
    assert rep.completely_self_dual
    assert rep.mho_invariant
    assert rep.varsigma_invariant
    assert rep.omega1_member
    want = tuple(f for f in (m, m) if f > 1)
    assert rep.record.k_invariant_factors == want


@pytest.mark.parametrize("m", (1, 2))
def test_special_family_k2(m):
    rep = special_families(m)["K2"]
    assert rep.record.group_order == 24 * m * m
    assert rep.completely_self_dual
    assert not rep.mho_invariant
    want = tuple(f for f in (m, 3 * m) if f > 1)
    assert rep.record.k_invariant_factors == want


def test_omega1_family_check():
    assert omega1_family_check(k1_octuple(3))
    assert not omega1_family_check(CoveringOctuple(2, 1, 1, 1, 1, 1, 1, 0))


# ---------------------------------------------------------------------------
# metacyclic chain groups
# ---------------------------------------------------------------------------

def test_metacyclic_quaternion_instance():
    mp = MetacyclicParams(2, 1, 1, 1, 0)
    rep = metacyclic_group(mp)
    assert rep.order == 8
    assert rep.derived_order == 2
    assert rep.derived_is_cyclic
    assert rep.abelianization == (2, 2)
    assert isomorphic_by_generator_search(quaternion_presentation(), 8, rep.group)


def test_metacyclic_frozen_instance():
    rep = metacyclic_group(MetacyclicParams(2, 1, 2, 1, 0))
    assert rep.order == 16
    assert rep.derived_order == 2
    assert rep.abelianization == (2, 4)
    assert rep.nilpotency_class == 2


def test_metacyclic_abelian_when_c_equals_d():
    rep = metacyclic_group(MetacyclicParams(3, 1, 1, 1, 1))
    assert rep.order == 27
    assert rep.derived_order == 1
    assert rep.nilpotency_class <= 1


def test_metacyclic_chain_is_enforced():
    with pytest.raises(ValueError):
        MetacyclicParams(2, 1, 1, 2, 0)  # c > a + d
    with pytest.raises(ValueError):
        MetacyclicParams(2, 1, 1, 0, 1)  # d > c


def test_nilpotency_audit():
    data = build_covering(CoveringOctuple(2, 2, 1, 1, 1, 1, 1, 0))
    audit = nilpotency_audit(data.hypermap.group, [data.u, data.v])
    assert audit.parts_normal
    assert audit.subgroup_order == 4
    assert audit.nilpotency_class == 1
    assert audit.within_bound


# ---------------------------------------------------------------------------
# distinct octuples give distinct hypermaps (spot check)
# ---------------------------------------------------------------------------

def test_octuples_classify_up_to_isomorphism(sweep8):
    """Distinct valid octuples of equal group order yield non-isomorphic
    hypermaps: the generator-respecting map never extends."""
    hypermaps = {}
    for rec in sweep8:
        hypermaps[rec.octuple.key()] = build_covering(rec.octuple).hypermap
    keys = sorted(hypermaps)
    checked = 0
    for i, k1 in enumerate(keys):
        for k2 in keys[i + 1:]:
            h1, h2 = hypermaps[k1], hypermaps[k2]
            if h1.order != h2.order:
                continue
            assert not hypermaps_isomorphic(h1, h2), (k1, k2)
            checked += 1
    assert checked > 100
