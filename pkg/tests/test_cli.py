import json

import pytest

from permcover.cli import main
from permcover.groups import code_from_descriptor
from permcover.perms import parse_perm

TABLE1_FIXTURE = (
    "n,r,annotation\n"
    "3,0,l\n"
    "4,1,l\n"
    "5,2,l\n"
    "6,3,e\n"
    "7,4,u\n"
    "8,5,u\n"
    "9,5,l\n"
    "10,6,l\n"
    "11,7,l\n"
    "12,8,e\n"
    "13,9,u\n"
    "14,10,u\n"
    "15,11,u\n"
    "16,12,u\n"
    "17,12,l\n"
    "18,13,l\n"
    "19,14,l\n"
    "20,15,e\n"
)


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def manifest(out):
    data = json.loads(out)
    for key in ("command", "parameters", "version", "threads", "wall_time_s", "result"):
        assert key in data
    return data


def test_table1_csv_byte_identical(capsys):
    code, out, err = run_cli(capsys, "table1", "--format", "csv")
    assert code == 0
    assert out == TABLE1_FIXTURE
    # the manifest moves to stderr so stdout stays byte-stable
    assert json.loads(err)["command"] == "table1"


def test_table1_single_row(capsys):
    code, out, _ = run_cli(
        capsys, "table1", "--start", "6", "--end", "6", "--format", "csv"
    )
    assert code == 0
    assert out == "n,r,annotation\n6,3,e\n"


def test_table1_json(capsys):
    code, out, _ = run_cli(capsys, "table1", "--start", "6", "--end", "7")
    assert code == 0
    rows = manifest(out)["result"]["rows"]
    assert rows == [
        {"n": 6, "r": 3, "annotation": "e"},
        {"n": 7, "r": 4, "annotation": "u"},
    ]


def test_table1_infeasible_without_force(capsys):
    code, out, err = run_cli(capsys, "table1", "--start", "3", "--end", "21")
    assert code == 3
    assert out == ""
    assert "--force" in err


@pytest.mark.slow
def test_table1_forced_extension(capsys):
    # past the tabulated range: value must still land inside dn_bounds,
    # which the annotation derivation checks; takes ~30s single-core
    code, out, err = run_cli(
        capsys, "table1", "--start", "22", "--end", "22", "--force", "--format", "csv"
    )
    assert code == 0
    assert "warning" in err
    lines = out.strip().splitlines()
    assert lines == ["n,r,annotation", "22,17,u"]


def test_formulas(capsys):
    code, out, _ = run_cli(capsys, "formulas", "--query", "r_pq", "--p", "5", "--q", "1")
    assert code == 0
    assert manifest(out)["result"]["value"] == 5
    code, out, _ = run_cli(capsys, "formulas", "--query", "dn_bounds", "--n", "12")
    assert manifest(out)["result"] == {
        "query": "dn_bounds", "n": 12, "lower": 8, "upper": 8, "exact": 8,
    }


def test_formulas_validation_errors(capsys):
    code, _, err = run_cli(capsys, "formulas", "--query", "r_pq", "--p", "1", "--q", "5")
    assert code == 2 and "p >= q" in err
    code, _, err = run_cli(capsys, "formulas", "--query", "r_pq", "--p", "5")
    assert code == 2 and "--q is required" in err


def test_radius(capsys):
    code, out, _ = run_cli(
        capsys, "radius", "--code", '{"kind":"dihedral","n":12}'
    )
    assert code == 0
    result = manifest(out)["result"]
    assert result["value"] == 8
    code, out, _ = run_cli(
        capsys, "radius", "--code", '{"kind":"product","parts":[3,2]}',
        "--method", "bruteforce",
    )
    result = manifest(out)["result"]
    assert result["value"] == 3
    assert parse_perm(result["witness"])


def test_radius_infeasible(capsys):
    code, _, err = run_cli(
        capsys, "radius", "--code", '{"kind":"cyclic","n":10}',
        "--method", "bruteforce",
    )
    assert code == 3 and "cap" in err


def test_radius_bad_descriptor(capsys):
    code, _, err = run_cli(capsys, "radius", "--code", "{not json")
    assert code == 2
    code, _, err = run_cli(capsys, "radius", "--code", '{"kind":"nope"}')
    assert code == 2


def test_witness(capsys):
    code, out, _ = run_cli(capsys, "witness", "--family", "dn", "--n", "12")
    assert code == 0
    result = manifest(out)["result"]
    assert result["verified"] is True
    assert "report" not in result
    # the emitted descriptor and permutation round-trip through the parsers
    assert code_from_descriptor(result["code"]).n == 12
    assert len(parse_perm(result["completed"])) == 12


def test_witness_report_flag(capsys):
    code, out, _ = run_cli(
        capsys, "witness", "--family", "pq", "--p", "4", "--q", "3", "--report"
    )
    result = manifest(out)["result"]
    assert len(result["report"]) == 12


def test_explain(capsys):
    code, out, _ = run_cli(
        capsys, "explain", "--code", '{"kind":"product","parts":[3,3]}',
        "--perm", "[6,5,4,1,2,3]", "--r", "3",
    )
    assert code == 0
    result = manifest(out)["result"]
    assert result["exposed"] is True
    assert len(result["blocks"]) == 2


def test_extrema(capsys):
    code, out, _ = run_cli(
        capsys, "extrema", "--code", '{"kind":"cyclic","n":5}'
    )
    result = manifest(out)["result"]
    assert result["lmax"] == 3 and result["lmin"] == 3
    code, _, err = run_cli(capsys, "extrema", "--code", '{"kind":"cyclic","n":9}')
    assert code == 3


def test_seed_determinism(capsys):
    args = ("witness", "--family", "lmax", "--p", "7", "--q", "5", "--seed", "42")
    _, out1, _ = run_cli(capsys, *args)
    _, out2, _ = run_cli(capsys, *args)
    m1, m2 = json.loads(out1), json.loads(out2)
    m1.pop("wall_time_s")
    m2.pop("wall_time_s")
    assert m1 == m2


def test_threads_env_fallback(capsys, monkeypatch):
    monkeypatch.setenv("PERMCOVER_THREADS", "2")
    _, out, _ = run_cli(capsys, "formulas", "--query", "r_cyclic", "--n", "9")
    assert manifest(out)["threads"] == 2
