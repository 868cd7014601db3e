import json

import pytest

from quatcover.census import CensusRecord
from quatcover.cli import (
    EXIT_CONFIG,
    EXIT_FAIL,
    EXIT_OK,
    main,
    smoke_battery,
    verify_table,
)


def run(argv):
    return main(argv)


# ---------------------------------------------------------------------------
# enumerate
# ---------------------------------------------------------------------------

def test_enumerate_jsonl_schema(tmp_path):
    out = tmp_path / "census.jsonl"
    assert run(["enumerate", "--max-mnd", "2", "--out", str(out)]) == EXIT_OK
    lines = out.read_text().strip().splitlines()
    assert len(lines) == 4
    for line in lines:
        d = json.loads(line)
        assert list(d) == list(CensusRecord.JSONL_KEYS)
        assert d["consistent"] == 1
        assert isinstance(d["fingerprint"], str)
        for key, value in d.items():
            if key == "fingerprint":
                continue
            assert isinstance(value, (int, list)), key


def test_enumerate_tsv(tmp_path):
    out = tmp_path / "census.tsv"
    assert run(["enumerate", "--max-mnd", "2", "--format", "tsv",
                "--out", str(out)]) == EXIT_OK
    lines = out.read_text().strip().splitlines()
    assert lines[0].split("\t") == list(CensusRecord.JSONL_KEYS)
    assert len(lines) == 5


def test_enumerate_deterministic_across_jobs(tmp_path):
    a = tmp_path / "a.jsonl"
    b = tmp_path / "b.jsonl"
    assert run(["enumerate", "--max-mnd", "4", "--jobs", "1",
                "--out", str(a)]) == EXIT_OK
    assert run(["enumerate", "--max-mnd", "4", "--jobs", "4",
                "--out", str(b)]) == EXIT_OK
    assert a.read_bytes() == b.read_bytes()


def test_enumerate_rejects_bad_config():
    assert run(["enumerate", "--max-mnd", "0"]) == EXIT_CONFIG
    assert run(["enumerate", "--jobs", "0"]) == EXIT_CONFIG
    assert run(["enumerate", "--max-mnd", "2", "--max-cosets", "0"]) == EXIT_CONFIG


def test_enumerate_coset_limit_is_config_error(tmp_path):
    out = tmp_path / "c.jsonl"
    # coset budget far below the group orders: records are emitted with
    # consistent = 0 and the run fails verification
    assert run(["enumerate", "--max-mnd", "4", "--max-cosets", "5",
                "--out", str(out)]) == EXIT_FAIL
    d = json.loads(out.read_text().splitlines()[0])
    assert d["consistent"] == 0


# ---------------------------------------------------------------------------
# verify-tables
# ---------------------------------------------------------------------------

def test_verify_tables_pass_with_expected_flags():
    assert run(["verify-tables", "--bound", "6"]) == EXIT_OK
    flagged = set()
    for table in (1, 2, 3, 4):
        for item in verify_table(table, 6):
            assert item.status in ("pass", "flagged-discrepancy"), item
            if item.status == "flagged-discrepancy":
                flagged.add(item.item)
    assert flagged == {"table2.iii d=6", "table2.viii", "table2.x",
                       "table3.v m=2", "table3.v m=4", "table3.v m=6"}


def test_verify_single_table():
    assert run(["verify-tables", "--table", "1", "--bound", "4"]) == EXIT_OK


# ---------------------------------------------------------------------------
# smoke
# ---------------------------------------------------------------------------

def test_smoke_battery_all_pass():
    items = smoke_battery()
    assert len(items) == 20
    bad = [it for it in items if it.status != "pass"]
    assert not bad, bad


def test_smoke_exit_code():
    assert run(["smoke"]) == EXIT_OK


# ---------------------------------------------------------------------------
# inspect
# ---------------------------------------------------------------------------

def test_inspect_valid_octuple(capsys):
    assert run(["inspect", "1", "1", "2", "1", "1", "1", "1", "1"]) == EXIT_OK
    text = capsys.readouterr().out
    assert "group_order: 16" in text
    assert "genus: 3" in text
    assert "omega1_invariant: 1" in text
    assert "fingerprint: C8^2" in text


def test_inspect_invalid_octuple(capsys):
    assert run(["inspect", "2", "1", "2", "1", "3", "1", "1", "1"]) == EXIT_FAIL
    text = capsys.readouterr().out
    assert "cond5" in text


# ---------------------------------------------------------------------------
# metacyclic
# ---------------------------------------------------------------------------

def test_metacyclic_command(capsys):
    assert run(["metacyclic", "2", "1", "1", "1", "0"]) == EXIT_OK
    text = capsys.readouterr().out
    assert "order: 8" in text
    assert "derived_subgroup_order: 2" in text


def test_metacyclic_chain_violation(capsys):
    assert run(["metacyclic", "2", "1", "1", "0", "1"]) == EXIT_CONFIG


# ---------------------------------------------------------------------------
# ops-hasse
# ---------------------------------------------------------------------------

def test_ops_hasse(capsys):
    assert run(["ops-hasse"]) == EXIT_OK
    text = capsys.readouterr().out
    assert "[pass] lattice structures, containments and matrix identities" in text
