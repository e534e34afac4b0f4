"""Command-line front end: formats, exit codes, determinism."""

import json

import pytest

from conftorus import cli, series


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_betti_both_engines_match(capsys):
    code, out = run(capsys, "betti", "--n", "2", "--engine", "both")
    assert code == 0
    assert "1,2,2" in out and "match" in out


def test_betti_csv_schema(capsys):
    code, out = run(
        capsys, "betti", "--n", "1..3", "--engine", "series", "--format", "csv"
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "n,i,h_i"
    assert lines[1] == "1,0,1"
    assert len(lines) == 1 + 2 + 3 + 4


def test_betti_n0(capsys):
    code, out = run(capsys, "betti", "--n", "0", "--engine", "spectral")
    assert code == 0
    assert "h = 1" in out


def test_purity_json(capsys):
    code, out = run(capsys, "purity", "--n", "3", "--format", "json")
    assert code == 0
    doc = json.loads(out.strip())
    assert doc["purity"] is True and doc["violations"] == []


def test_purity_table(capsys):
    code, out = run(capsys, "purity", "--n", "1")
    assert code == 0 and "pure" in out


def test_hodge_contains_expected_entry(capsys):
    code, out = run(capsys, "hodge", "--n", "2")
    assert code == 0
    assert "h^{2,1}(H^2)=1" in out


def test_series_command(capsys):
    code, out = run(capsys, "series", "--which", "K", "--t-order", "3")
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 4
    assert lines[0] == "t^0: 1"
    assert "u^6" in lines[3]


def test_series_json_deterministic(capsys):
    _, out1 = run(capsys, "series", "--which", "K4", "--t-order", "4")
    _, out2 = run(capsys, "series", "--which", "K4", "--t-order", "4")
    assert out1 == out2
    _, j1 = run(capsys, "series", "--which", "Z4", "--t-order", "4", "--format", "json")
    _, j2 = run(capsys, "series", "--which", "Z4", "--t-order", "4", "--format", "json")
    assert j1 == j2
    doc = json.loads(j1.strip().splitlines()[1])
    assert set(doc) == {"n", "coefficients"}


def test_report_json_deterministic(capsys):
    _, out1 = run(capsys, "betti", "--n", "0..2", "--format", "json")
    _, out2 = run(capsys, "betti", "--n", "0..2", "--format", "json")
    assert out1 == out2


def test_n_cap_requires_flag(capsys):
    with pytest.raises(SystemExit) as err:
        cli.main(["betti", "--n", "6"])
    assert err.value.code == 2


def test_bad_range_rejected(capsys):
    with pytest.raises(SystemExit):
        cli.main(["betti", "--n", "-1"])


def test_workers_validation():
    with pytest.raises(SystemExit):
        cli.main(["betti", "--n", "2", "--workers", "0"])


def test_mismatch_gives_nonzero_exit(capsys, monkeypatch):
    def wrong_decode(coeff, n, weight_inverse=None):
        return [42]

    monkeypatch.setattr(series, "decode_betti", wrong_decode)
    code, out = run(capsys, "betti", "--n", "1", "--engine", "both")
    assert code == 1
    assert "MISMATCH" in out


def test_selftest_small(capsys):
    code, out = run(capsys, "selftest", "--n", "2", "--format", "json")
    assert code == 0
    doc = json.loads(out.strip())
    assert doc["all_passed"] is True
    names = {r["name"] for r in doc["results"]}
    assert "vakil_wood_identity" in names
    assert "genus_zero_table" in names


def test_workers_parallel_betti(capsys):
    code, out = run(
        capsys, "betti", "--n", "0..3", "--workers", "2", "--engine", "spectral"
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0].startswith("n=0") and lines[3].startswith("n=3")
