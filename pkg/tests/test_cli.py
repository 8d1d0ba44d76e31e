import json

from cyclomzv.cli import run
from cyclomzv.lie import random_lie
from cyclomzv.series import exp_concat
from cyclomzv.seriesfile import dumps, read


def run_json(capsys, argv):
    code = run(argv + ["--json"])
    out = capsys.readouterr().out
    return code, json.loads(out)


def test_dims_json(capsys):
    code, data = run_json(capsys, ["dims", "--N", "1", "--max-weight", "11"])
    assert code == 0
    assert data["schema"] == 1
    assert data["D_proof"] == [1, 0, 1, 1, 1, 2, 2, 3, 4, 5, 7, 9]
    assert [r["D_n_proof"] for r in data["rows"]] == data["D_proof"]
    assert "D_n_printed" not in data["rows"][0]


def test_dims_printed_reports_discrepancy(capsys):
    code, data = run_json(capsys, ["dims", "--N", "3", "--max-weight", "4", "--printed"])
    assert code == 0 and data["discrepancy"]
    assert data["D_printed"] == [1] * 5
    assert data["rows"][2] == {"n": 2, "D_n_proof": 4, "D_n_printed": 1, "witt_dim": 6}


def test_check_ihara_suite(capsys):
    code, data = run_json(capsys, ["check", "--suite", "ihara", "--N", "2", "--weight", "5",
                                   "--seed", "7"])
    assert code == 0 and data["pass"]
    assert all(set(r) == {"test", "residual", "tolerance", "pass"} for r in data["results"])


def test_check_output_is_reproducible(capsys):
    argv = ["check", "--suite", "series", "--N", "2", "--weight", "4", "--seed", "3", "--json"]
    run(argv)
    first = capsys.readouterr().out
    run(argv)
    assert capsys.readouterr().out == first


def test_dch_over_budget(capsys):
    assert run(["dch", "--N", "9"]) == 2
    assert "budget" in capsys.readouterr().err


def test_usage_errors(capsys):
    assert run(["nonsense"]) == 2
    assert run(["dims", "--N", "0"]) == 2
    assert run(["ihara", "--op", "bracket", "missing-file"]) == 2
    assert run(["dch", "--N", "1", "--weight", "9"]) == 2


def test_dch_writes_series_file(tmp_path):
    out = tmp_path / "d.txt"
    assert run(["dch", "--N", "2", "--weight", "2", "--precision", "128", "--out", str(out)]) == 0
    d = read(str(out))
    assert d.level == 2 and d.trunc == 2 and d.ring.bits == 128
    assert out.read_text().startswith("N=2 W=2 ring=C p=128")


def test_ihara_ops_on_files(tmp_path, rng):
    a, b = random_lie(rng, 2, 4), random_lie(rng, 2, 4)
    fa, fb = tmp_path / "a.txt", tmp_path / "b.txt"
    fa.write_text(dumps(a))
    fb.write_text(dumps(b))
    out = tmp_path / "r.txt"
    assert run(["ihara", "--op", "bracket", str(fa), str(fb), "--out", str(out)]) == 0
    from cyclomzv.ihara import circ, ihara_bracket
    assert read(str(out)) == ihara_bracket(a, b)
    ga, gb = tmp_path / "ga.txt", tmp_path / "gb.txt"
    assert run(["ihara", "--op", "exp", str(fa), "--out", str(ga)]) == 0
    gb.write_text(dumps(exp_concat(b)))
    assert run(["ihara", "--op", "circ", str(ga), str(gb), "--out", str(out)]) == 0
    assert read(str(out)) == circ(read(str(ga)), exp_concat(b))
    assert run(["ihara", "--op", "dihedral", "--flip", str(fa), "--out", str(out)]) == 0
    assert run(["ihara", "--op", "circ", str(fa), str(fb)]) == 2


def test_lyndon_listing(capsys):
    code, data = run_json(capsys, ["lyndon", "--N", "2", "--weight", "3"])
    assert code == 0 and data["count"] == data["witt_dim"] == 8


def test_failed_check_exit_code(monkeypatch, capsys):
    from cyclomzv import checks
    monkeypatch.setattr(checks, "run_suite",
                        lambda *a, **k: [checks.CheckResult("forced", 1.0, 0.0, False)])
    assert run(["check", "--suite", "series"]) == 1
