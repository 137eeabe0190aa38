import csv
import io
import json
import os

import numpy as np
import pytest

from jacobi_geometry import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_emit_metric(capsys):
    code, out, _ = run(capsys, "emit", "metric", "--space", "SL2R", "--params", "alpha=1,beta=1", "--point", "0,1,0")
    assert code == 0
    assert json.loads(out) == [[2.0, 0.0, 2.0], [0.0, 1.0, 0.0], [2.0, 0.0, 4.0]]


def test_emit_frame_is_dual(capsys):
    code, out, _ = run(capsys, "emit", "frame", "--space", "XJ1", "--params", "alpha=1.5,gamma=0.5", "--point", "0.1,1.3,0.2,-0.4")
    data = json.loads(out)
    assert code == 0
    assert np.allclose(np.array(data["coframe"]) @ np.array(data["frame"]), np.eye(4), atol=1e-12)


def test_zero_velocity_geodesic_is_constant(capsys):
    code, out, _ = run(capsys, "emit", "geodesic", "--space", "X1", "--params", "alpha=1", "--point", "0.2,1.5",
                       "--velocity", "0,0", "--steps", "20", "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert code == 0
    assert rows[0] == ["t", "x", "y", "energy"]
    assert len(rows) == 22
    assert all(r[1:3] == ["0.2", "1.5"] for r in rows[1:])


def test_geodesic_svg_side_file(tmp_path, capsys):
    code, _, _ = run(capsys, "emit", "geodesic", "--space", "X1", "--point", "0,1", "--velocity", "1,0.2",
                     "--steps", "50", "--out-dir", str(tmp_path), "--out", "path.csv", "--svg", "path.svg")
    assert code == 0
    assert (tmp_path / "path.svg").read_text().startswith("<svg")
    assert len((tmp_path / "path.csv").read_text().splitlines()) == 52


def test_geovec_table(capsys):
    code, out, _ = run(capsys, "emit", "geovec-table", "--params", "alpha=2,beta=0.5", "--seed", "3", "--with-lemma")
    data = json.loads(out)
    assert code == 0
    assert [r["row"] for r in data["rows"]] == [1, 2, 3, 4, 5]
    for r in data["rows"]:
        assert max(abs(r[f"residual_{i}"]) for i in range(1, 5)) < 1e-12
        assert "lemma_1" in r


def test_geovec_table_csv(capsys):
    code, out, _ = run(capsys, "emit", "geovec-table", "--format", "csv")
    assert code == 0
    assert len(out.strip().splitlines()) == 6


def test_contact_report(capsys):
    code, out, _ = run(capsys, "emit", "contact-report", "--samples", "3")
    data = json.loads(out)
    assert code == 0
    assert data["SL2R"]["verdict"] == "Sasaki"
    assert data["ExtXJ1"]["verdict"] == "Negative"


@pytest.mark.parametrize("argv", [
    ("emit", "metric", "--space", "SL2R", "--params", "gamma=1"),
    ("emit", "metric", "--space", "X1", "--params", "alpha=-1"),
    ("emit", "metric", "--space", "X1", "--point", "0,-1"),
    ("emit", "metric", "--space", "X1", "--point", "0,1,2"),
    ("emit", "metric"),
    ("emit", "geodesic", "--space", "X1"),
    ("emit", "geodesic", "--space", "X1", "--velocity", "1,0", "--steps", "5"),
    ("emit", "metric", "--space", "X1", "--format", "csv"),
    ("emit", "metric", "--space", "X1", "--params", "alpha=x"),
    ("run", "frames", "--samples", "0"),
    ("run", "frames", "--format", "svg"),
])
def test_bad_configuration_exits_with_two(argv, capsys):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert err.startswith("jacobi-geometry:")


def test_run_writes_reports_atomically(tmp_path, capsys):
    target = tmp_path / "report.json"
    code, _, err = run(capsys, "run", "reductivity", "--space", "X1", "--samples", "2", "--out", str(target))
    assert code == 0
    data = json.loads(target.read_text())
    assert data["summary"]["failed"] == 0
    assert "checks passed" in err
    assert [p for p in os.listdir(tmp_path) if p.startswith(".tmp-")] == []


def test_run_reports_failures_with_exit_one(capsys):
    # the balanced-metric reductivity witness passes, but XJ1 geodesic orbits of rows 3-5 do not
    code, out, _ = run(capsys, "run", "geodesics", "--space", "XJ1", "--samples", "1", "--format", "text")
    assert code == 1
    assert "FAIL  geodesics.orbits.XJ1.row3" in out


def test_runs_are_deterministic(capsys):
    first = run(capsys, "run", "contact", "--seed", "7", "--samples", "3")[1]
    second = run(capsys, "run", "contact", "--seed", "7", "--samples", "3")[1]
    assert first == second


def test_tolerance_override(capsys):
    code, out, _ = run(capsys, "run", "reductivity", "--space", "X1", "--tol", "1e-30", "--samples", "1")
    data = json.loads(out)
    assert all(c["tol"] == 1e-30 for c in data["checks"])
    assert code in (0, 1)
