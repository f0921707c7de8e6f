import json
import subprocess
import sys
from fractions import Fraction

import pytest

from densitylab.cli import main, run_sweep, sweep_csv, transition
from densitylab.constructions import kurka_params

F = Fraction


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_roots_table(capsys):
    code, out, _ = run(capsys, "roots")
    assert code == 0
    for value in ("0.268486", "0.262978", "0.271069", "0.271844", "0.280776"):
        assert value in out
    assert len(out.strip().splitlines()) == 10


def test_roots_respects_env_tolerance(capsys, monkeypatch):
    monkeypatch.setenv("DENSITYLAB_TOL", "1/1000000")
    code, out, _ = run(capsys, "roots")
    assert code == 0
    first = out.splitlines()[0].split()[-1]
    assert first.startswith("0.268486") and len(first.split(".")[1]) == 6


@pytest.fixture
def c18(tmp_path, capsys):
    path = tmp_path / "c18.json"
    code, _, _ = run(capsys, "construct", "kurka", "--delta", "27/100", "--n", 18, "--out", path)
    assert code == 0
    return path


def test_construct_round_trip_is_byte_identical(c18, tmp_path, capsys):
    from densitylab.intervals import dumps_set, loads_set

    text = c18.read_text(encoding="utf-8")
    assert dumps_set(loads_set(text)) == text
    doc = json.loads(text)
    assert doc["halfline"] is True and doc["intervals"][-1][1] == "1"


def test_verify_exit_codes(c18, tmp_path, capsys):
    code, out, _ = run(capsys, "verify", c18, "--delta", "27/100")
    assert code == 0 and json.loads(out)["passed"] is True
    code, out, _ = run(capsys, "verify", c18, "--delta", "20/100")
    report = json.loads(out)
    assert code == 1 and report["passed"] is False
    assert any(f["side"] == "violation" and f["endpoint"] for f in report["findings"])
    bad = tmp_path / "bad.json"
    bad.write_text('{"halfline": true, "intervals": [["3/0", "1"]]}', encoding="utf-8")
    code, _, err = run(capsys, "verify", bad, "--delta", "27/100")
    assert code == 2 and "error" in err
    bad.write_text('{"halfline": true, "intervals": [["2", "3"], ["1", "3/2"]]}', encoding="utf-8")
    assert run(capsys, "verify", bad, "--delta", "27/100")[0] == 2
    assert run(capsys, "verify", tmp_path / "missing.json", "--delta", "1/4")[0] == 2
    assert run(capsys, "verify", c18, "--delta", "abc")[0] == 2


def test_profile_csv_contains_one_minus_m(tmp_path, capsys):
    cfg, out_csv = tmp_path / "c3.json", tmp_path / "p.csv"
    run(capsys, "construct", "kurka", "--n", 3, "--out", cfg)
    m = kurka_params(F(27, 100)).m
    code, _, _ = run(capsys, "profile", cfg, "--point", str(m), "--out", out_csv, "--digits", 15)
    assert code == 0
    lines = out_csv.read_text().splitlines()
    assert lines[0] == "omega,density"
    omegas = [F(line.split(",")[0]) for line in lines[1:]]
    assert any(abs(w - (1 - m)) < F(1, 10**14) for w in omegas)


def test_sweep_small_and_deterministic(capsys):
    argv = ["sweep", "--from", "0.268", "--to", "0.270", "--steps", 4, "--n-max", 100]
    a = run(capsys, *argv)[1]
    b = run(capsys, *argv)[1]
    assert a == b
    rows = a.strip().splitlines()
    assert rows[0] == "delta,delta_exact,minimal_n,verdict"
    verdicts = [r.split(",")[3] for r in rows[1:]]
    assert verdicts[0] == "not-found" and verdicts[-1] == "found"


def test_sweep_jobs_match_serial():
    serial = run_sweep(F(272, 1000), F(28, 100), 4, 100, jobs=1)
    parallel = run_sweep(F(272, 1000), F(28, 100), 4, 100, jobs=2)
    assert sweep_csv(serial) == sweep_csv(parallel)


def test_sweep_far_sides():
    above = run_sweep(F(273, 1000), F(300, 1000), 6, 100)
    assert all(r.verdict == "found" and r.minimal_n <= 12 for r in above)
    ns = [r.minimal_n for r in above]
    assert ns == sorted(ns, reverse=True)
    below = run_sweep(F(240, 1000), F(259, 1000), 5, 100)
    assert all(r.verdict == "not-found" for r in below)
    assert transition(below) is None


def test_sweep_rejects_bad_range(capsys):
    assert run(capsys, "sweep", "--from", "0.3", "--to", "0.2", "--steps", 3)[0] == 2


def test_goodset_verify_example(capsys):
    code, out, err = run(capsys, "goodset", "verify", "--example", "--delta", "27/100", "--periods", 1)
    assert code == 0
    doc = json.loads(out)
    assert doc["measure"] == "5621/9050"
    assert doc["condition_i"]["passed"] and doc["condition_ii"]["passed"]
    assert "5621/9050" in err


def test_goodset_generator_file_and_cover(tmp_path, capsys):
    from densitylab.constructions import good_set_example

    gen = tmp_path / "g.json"
    gen.write_text(good_set_example(F(27, 100)).dumps(), encoding="utf-8")
    code, out, _ = run(capsys, "goodset", "cover", "--generator", gen, "--delta", "27/100")
    assert code == 0 and len(json.loads(out)) >= 4
    assert run(capsys, "goodset", "cover", "--delta", "27/100")[0] == 2


def test_oracle_lemmaxy(tmp_path, capsys):
    path = tmp_path / "h.json"
    path.write_text('{"halfline": false, "intervals": [["0", "5"]]}', encoding="utf-8")
    code, out, _ = run(capsys, "oracle", "lemmaxy", "--set", path, "--p", 0, "--q", 5,
                       "--delta", "27/100", "--seed", 3)
    assert code == 0 and json.loads(out)["status"] == "holds"


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "densitylab", "roots"], capture_output=True, text=True)
    assert res.returncode == 0 and "0.268486" in res.stdout
