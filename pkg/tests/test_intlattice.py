import random

import pytest

from quatcover.intlattice import (
    FinAbGroup,
    InfiniteQuotientError,
    IntMatrix,
    abgroup_from_relations,
    element_order,
    is_unit,
    lattice_index_bruteforce,
    smith_normal_form,
)


def test_snf_identities_on_random_matrices():
    rng = random.Random(20260826)
    for _ in range(1000):
        rows = rng.randint(1, 4)
        cols = rng.randint(1, 4)
        A = IntMatrix.from_rows(
            [[rng.randint(-10, 10) for _ in range(cols)] for _ in range(rows)])
        snf = smith_normal_form(A)
        assert (snf.U @ A @ snf.V).entries == snf.S.entries
        assert snf.U.det() in (1, -1)
        assert snf.V.det() in (1, -1)
        diag = snf.diagonal
        assert all(d >= 0 for d in diag)
        for a, b in zip(diag, diag[1:]):
            if b:
                assert a and b % a == 0
        # off-diagonal entries of S are zero
        for i in range(snf.S.rows):
            for j in range(snf.S.cols):
                if i != j:
                    assert snf.S[i, j] == 0


def test_snf_fixed_case():
    snf = smith_normal_form(IntMatrix.from_rows([[2, -2], [0, 6]]))
    assert snf.diagonal == (2, 6)
    assert lattice_index_bruteforce([[2, -2], [0, 6]]) == 12


def test_finabgroup_matches_bruteforce_index():
    rng = random.Random(11)
    tried = 0
    while tried < 50:
        n = rng.randint(1, 3)
        rows = [[rng.randint(-5, 5) for _ in range(n)] for _ in range(n)]
        det = abs(IntMatrix.from_rows(rows).det())
        if det == 0 or det > 60:
            continue
        tried += 1
        G = FinAbGroup(n, rows)
        assert G.order == lattice_index_bruteforce(rows)


def test_finabgroup_fixed_invariants():
    G = FinAbGroup(2, [(4, 0), (0, 4), (2, -2)])
    assert G.invariant_factors == (2, 4)
    assert G.order == 8
    assert G.order == lattice_index_bruteforce([(4, 0), (0, 4), (2, -2)])
    assert not G.is_cyclic()
    # u has order 4 in Z^2 / <(4,0),(0,4),(2,-2)> since 2u = 2v
    u = G.generator(0)
    assert element_order(G, u) == 4
    assert element_order(G, G.zero) == 1
    assert len(G.cyclic_subgroup(u)) == 4


def test_finabgroup_cyclic_cases():
    G = FinAbGroup(1, [(6,)])
    assert G.invariant_factors == (6,)
    assert G.is_cyclic()
    g = G.generator(0)
    assert element_order(G, G.scale(2, g)) == 3
    assert element_order(G, G.scale(3, g)) == 2
    trivial = FinAbGroup(1, [(1,)])
    assert trivial.invariant_factors == ()
    assert trivial.order == 1


def test_infinite_quotient_raises():
    with pytest.raises(InfiniteQuotientError):
        FinAbGroup(2, [(1, 0)])
    with pytest.raises(InfiniteQuotientError):
        abgroup_from_relations(2, [(2, 4)])


def test_is_unit():
    assert is_unit(3, 8)
    assert not is_unit(2, 8)
    assert is_unit(0, 1)
    assert is_unit(-1, 5)
    with pytest.raises(ValueError):
        is_unit(1, 0)


def test_intmatrix_basics():
    A = IntMatrix.from_rows([[1, 2], [3, 4]])
    assert A.det() == -2
    assert (A @ IntMatrix.identity(2)).entries == A.entries
    with pytest.raises(ValueError):
        IntMatrix.from_rows([[1, 2], [3]])
    with pytest.raises(ValueError):
        A @ IntMatrix.from_rows([[1, 2, 3]])
