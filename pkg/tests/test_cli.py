import json
import shutil
import subprocess
import sys

import numpy as np
import pytest

from curved_wigner import __version__
from curved_wigner.cli import main
from curved_wigner.report import (
    SCHEMA_VERSION,
    ConfigError,
    FigureTable,
    RunConfig,
    cmd_quasientropy_curve,
    cmd_verify,
    cmd_wigner_grid,
    read_csv,
)


def test_quasientropy_curve_values():
    t = cmd_quasientropy_curve(0.0, 1.0, 3)
    np.testing.assert_array_equal(t.column("p"), [0.0, 0.5, 1.0])
    assert t.column("entropy").tolist() == [0.0, np.log(2), 0.0]
    assert not np.signbit(t.column("entropy")).any()
    neg = cmd_quasientropy_curve(-1.0, 2.0, 7)
    assert neg.column("negative")[0] == 1.0


def test_csv_round_trip_is_exact():
    t = cmd_wigner_grid("ads2", {"j": 2, "R": 1.3}, (-2.0, 2.0), (-1.0, 3.0), 7, 5)
    back = read_csv(t.to_csv())
    assert back.columns == t.columns
    assert back.rows == t.rows
    assert back.provenance == t.provenance
    assert t.provenance["version"] == __version__


def test_table_validation():
    with pytest.raises(ValueError):
        FigureTable(["a", "b"], [[1.0]], {"x": 1})
    with pytest.raises(ValueError):
        FigureTable(["a"], [[1.0]], {})


def test_json_schema(tmp_path):
    out = tmp_path / "g.json"
    assert main(["wigner-grid", "--geometry", "flat", "--level", "1", "--nx", "3", "--np", "4",
                 "--format", "json", "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert set(doc) == {"schema_version", "config", "rows", "provenance"}
    assert doc["schema_version"] == SCHEMA_VERSION
    assert len(doc["rows"]) == 12 and set(doc["rows"][0]) == {"x", "p", "rho"}
    assert doc["config"]["level"] == 1
    assert doc["provenance"]["params"]["n"] == 1


def test_output_is_deterministic(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    for f in (a, b):
        assert main(["flat-levels", "--n-max", "2", "--out", str(f)]) == 0
    assert a.read_bytes() == b.read_bytes()
    t = read_csv(a.read_text())
    np.testing.assert_allclose(t.column("H_XP_numeric"), t.column("H_XP_closed"), atol=1e-7)
    assert np.all(t.column("H_X_plus_H_P") >= t.column("bbm_bound") - 1e-9)


def test_stdout_csv(capsys):
    assert main(["quasientropy-curve", "--p-min", "0", "--p-max", "1", "--steps", "3"]) == 0
    text = capsys.readouterr().out
    assert text.startswith("# command: ")
    assert read_csv(text).column("entropy")[1] == np.log(2)


@pytest.mark.parametrize(
    "argv",
    [
        ["quasientropy-curve", "--p-min", "2", "--p-max", "1"],
        ["flat-levels", "--tol", "-1"],
        ["ads2-levels", "--j-max", "0"],
        ["wigner-grid", "--geometry", "ads2", "--level", "0"],
        ["wigner-grid", "--nx", "1"],
        ["wigner-grid", "--x-range", "3,1"],
    ],
)
def test_bad_config_exit_2(argv, capsys):
    assert main(argv) == 2
    assert "curved-wigner:" in capsys.readouterr().err


def test_bad_flag_exit_2():
    with pytest.raises(SystemExit) as e:
        main(["no-such-command"])
    assert e.value.code == 2
    with pytest.raises(SystemExit) as e:
        main(["wigner-grid", "--x-range", "oops"])
    assert e.value.code == 2


def test_run_config_validation():
    with pytest.raises(ConfigError):
        RunConfig("verify", suite="nope").validate()
    assert RunConfig("verify").quadrature().rel_tol == 1e-8


def test_verify_bounds_passes_and_detects_perturbation(capsys):
    assert main(["verify", "--suite", "bounds"]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["passed"] and all(c["passed"] for c in rep["checks"])
    assert {"name", "expected", "actual", "tolerance", "passed"} <= set(rep["checks"][0])
    assert main(["verify", "--suite", "bounds", "--perturbation", "0.1"]) == 1
    rep = json.loads(capsys.readouterr().out)
    assert not rep["passed"]


def test_verify_errors_become_failed_checks(monkeypatch):
    import curved_wigner.report as report

    def boom(*a, **k):
        raise RuntimeError("no")

    monkeypatch.setattr(report, "marginal_position", boom)
    status, rep = cmd_verify("marginals")
    assert status == 1
    bad = [c for c in rep["checks"] if not c["passed"]]
    assert bad and all(c["note"].startswith("error:") for c in bad)


@pytest.mark.slow
def test_verify_all():
    status, rep = cmd_verify("all")
    assert status == 0, [c for c in rep["checks"] if not c["passed"]]


def test_console_script():
    exe = shutil.which("curved-wigner")
    cmd = [exe] if exe else [sys.executable, "-m", "curved_wigner.cli"]
    r = subprocess.run(cmd + ["quasientropy-curve", "--steps", "2"], capture_output=True, text=True)
    assert r.returncode == 0 and "entropy" in r.stdout
    r = subprocess.run(cmd + ["flat-levels", "--n-max", "99"], capture_output=True, text=True)
    assert r.returncode == 2
