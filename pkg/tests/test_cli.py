import csv
import json
import subprocess
import sys

import pytest

from oflp.cli import main


@pytest.fixture
def write(tmp_path):
    def _write(name, payload):
        path = tmp_path / name
        path.write_text(payload if isinstance(payload, str) else json.dumps(payload))
        return str(path)

    return _write


@pytest.fixture
def fig1_file(write):
    return write("fig1.json", {"locations": ["0.1"] * 2 + ["0.8"] * 5})


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_solve_deterministic(capsys, fig1_file):
    code, out, _ = run(capsys, "solve", "--mech", "opt-uw-fair", "-i", fig1_file)
    assert code == 0
    assert "17/70" in out and "43/14" in out


def test_solve_lottery(capsys, fig1_file):
    code, out, _ = run(capsys, "solve", "--mech", "mechanism2", "-i", fig1_file)
    assert code == 0 and "0:15/23 1:8/23" in out


def test_solve_sampling_is_seeded(capsys, fig1_file):
    first = run(capsys, "solve", "--mech", "mechanism2", "-i", fig1_file, "--sample", "5", "--seed", "4")
    second = run(capsys, "solve", "--mech", "mechanism2", "-i", fig1_file, "--sample", "5", "--seed", "4")
    assert first == second and first[0] == 0


def test_solve_infeasible(capsys, write):
    path = write("q.json", {"locations": ["0.25", "0.75"]})
    code, out, _ = run(capsys, "solve", "--mech", "opt-uw-fair", "--axiom", "ifs", "--alpha", "1.5", "-i", path)
    assert code == 2 and "infeasible" in out


def test_solve_hybrid(capsys, write):
    path = write("h.json", {"classic": [0, 0], "obnoxious": [0, 0]})
    code, out, _ = run(capsys, "solve", "--mech", "solve-hybrid", "-i", path)
    assert code == 0 and "1/4" in out


def test_check_pass_and_fail(capsys, write):
    path = write("l5.json", {"locations": ["0.35"] * 7 + ["0.55"] * 3})
    code, out, _ = run(capsys, "check", "-i", path, "-y", "0.71")
    assert code == 0 and "PASS" in out
    code, out, _ = run(capsys, "check", "-i", path, "-y", "0.71", "--axiom", "pf")
    assert code == 2 and "FAIL" in out and "window[7/20,11/20]" in out


def test_check_lottery(capsys, write):
    prof = write("p.json", {"locations": [0, 1, 1]})
    lot = write("l.json", {"atoms": [[0, "5/6"], [1, "1/6"]]})
    code, out, _ = run(capsys, "check", "-i", prof, "--lottery", lot, "--axiom", "ifs")
    assert code == 0 and "PASS" in out


def test_region(capsys, fig1_file, write):
    code, out, _ = run(capsys, "region", "-i", fig1_file)
    assert code == 0 and "17/70" in out and "31/70" in out
    path = write("q.json", {"locations": ["0.25", "0.75"]})
    code, out, _ = run(capsys, "region", "-i", path, "--axiom", "ifs", "--alpha", "1.9")
    assert code == 2 and "empty" in out


def test_equilibrium_actions(capsys, write):
    truth = write("t.json", {"locations": ["0.2", "0.2"]})
    reports = write("r.json", {"reports": [1, 1]})
    code, out, _ = run(capsys, "equilibrium", "verify", "-i", truth, "--reports", reports, "--eps", "0.1", "--grid", "201")
    assert code == 0
    code, out, _ = run(capsys, "equilibrium", "construct", "-i", truth, "--eps", "0.01", "--grid", "201")
    assert code == 0
    code, out, _ = run(capsys, "equilibrium", "poa-family", "--n", "2", "--eps", "0.1")
    assert code == 0 and "4" in out
    code, _, _ = run(capsys, "equilibrium", "poa-family", "--n", "2", "--eps", "0.5")
    assert code == 1


def test_experiment_csv(capsys, tmp_path):
    out_path = tmp_path / "out.csv"
    summary = tmp_path / "s.json"
    code, _, err = run(
        capsys, "experiment", "--mode", "ratio-2ifs", "--n-max", "4", "--samples", "20",
        "--jobs", "1", "--out", str(out_path), "--summary", str(summary),
    )
    assert code == 0 and err
    rows = list(csv.DictReader(out_path.open()))
    assert list(rows[0]) == ["family", "n", "eps", "instance", "optimal", "constrained", "ratio"]
    assert json.loads(summary.read_text())


@pytest.mark.parametrize(
    "argv",
    [
        ["solve", "--mech", "nope", "-i", "x.json"],
        ["solve", "--mech", "opt-uw", "-i", "/no/such/file.json"],
        ["experiment", "--mode", "nope"],
        ["equilibrium", "construct", "--eps", "0.1"],
    ],
)
def test_input_errors_exit_1(capsys, argv):
    with pytest.raises(SystemExit) as info:
        sys.exit(main(argv))
    assert info.value.code == 1


def test_bad_json(capsys, write):
    path = write("bad.json", "{not json")
    code, _, err = run(capsys, "solve", "--mech", "opt-uw", "-i", path)
    assert code == 1 and "invalid JSON" in err
    path = write("oob.json", {"locations": ["1.5"]})
    assert run(capsys, "solve", "--mech", "opt-uw", "-i", path)[0] == 1


def test_module_entry_point(fig1_file):
    proc = subprocess.run(
        [sys.executable, "-m", "oflp", "solve", "--mech", "opt-ew", "-i", fig1_file],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0 and "9/20" in proc.stdout
