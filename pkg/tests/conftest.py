import pytest

from quatcover.census import enumerate_census


@pytest.fixture(scope="session")
def sweep48():
    """Full census up to m*n*d = 48 with the group-level symmetry
    cross-check enabled wherever the group order permits.  Computed once
    and shared by every test that needs sweep data."""
    return enumerate_census(48)


@pytest.fixture(scope="session")
def sweep8(sweep48):
    return [rec for rec in sweep48 if rec.octuple.mnd <= 8]
