import csv
from pathlib import Path

import numpy as np
import pytest

from diracwalk import cli
from diracwalk.exceptions import ConfigError, ConservationError, ParameterError
from diracwalk.types import probability_profile, run_config, simulation_record, walk_parameters

GOLDEN = Path(__file__).parent / "golden"


def _record(rows):
    frames = [
        probability_profile.ProbabilityProfile(plus=np.asarray(row, dtype=float), minus=np.zeros(len(row)))
        for row in rows
    ]
    return simulation_record.SimulationRecord(
        params=walk_parameters.WalkParameters(0.0, 0.0), n=len(rows[0]), t=len(rows), engine="stencil", frames=frames
    )


def _pgm(path):
    tokens = path.read_text().split()
    assert tokens[0] == "P2"
    columns, rows, maxval = int(tokens[1]), int(tokens[2]), int(tokens[3])
    pixels = np.array([int(v) for v in tokens[4:]]).reshape(rows, columns)
    return maxval, pixels


def _manifest(path):
    entries = {}
    for line in path.read_text().splitlines():
        if ": " in line:
            key, value = line.split(": ", 1)
            entries[key] = value
    return entries


def test_simulate_writes_outputs(tmp_path, capsys):
    # Run
    code = cli.main(["simulate", "--R", "0.8", "--rho", "0.2", "--n", "20", "--t", "7", "--output-dir", str(tmp_path)])
    # Validate
    assert code == 0
    assert "conservation drift" in capsys.readouterr().out
    with (tmp_path / "frames.csv").open() as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["t", "x", "prob_plus", "prob_minus", "prob_total"]
    assert len(rows) == 1 + 20 * 7
    assert rows[1][:2] == ["0", "0"]
    assert rows[-1][:2] == ["6", "19"]
    maxval, pixels = _pgm(tmp_path / "heatmap.pgm")
    assert maxval == 255
    assert pixels.shape == (7, 20)
    assert pixels.max() == 255
    manifest = _manifest(tmp_path / "manifest.txt")
    assert manifest["command"] == "simulate"
    assert float(manifest["conservation_drift"]) <= 1e-9


def test_simulate_reference_run(tmp_path):
    code = cli.main(["simulate", "--R", "0.8", "--rho", "0", "--n", "100", "--t", "300", "--output-dir", str(tmp_path)])
    assert code == 0
    manifest = _manifest(tmp_path / "manifest.txt")
    assert float(manifest["conservation_drift"]) <= 1e-9
    assert float(manifest["max_mirror_asymmetry"]) <= 0.02
    _, pixels = _pgm(tmp_path / "heatmap.pgm")
    assert pixels.shape == (300, 100)
    # Checked-in image anchors the numerics and the file layout
    assert (tmp_path / "heatmap.pgm").read_bytes() == (GOLDEN / "heatmap_0.8_0.pgm").read_bytes()


def test_simulate_is_reproducible(tmp_path):
    argv = ["simulate", "--R", "0.5", "--rho", "1.0", "--n", "16", "--t", "12", "--output-dir", str(tmp_path)]
    assert cli.main(argv) == 0
    first = {name: (tmp_path / name).read_bytes() for name in ("frames.csv", "heatmap.pgm", "manifest.txt")}
    assert cli.main(argv) == 0
    for name, content in first.items():
        assert (tmp_path / name).read_bytes() == content


def test_simulate_selected_formats(tmp_path):
    argv = ["simulate", "--n", "10", "--t", "3", "--formats", "pgm", "--output-dir", str(tmp_path)]
    assert cli.main(argv) == 0
    assert (tmp_path / "heatmap.pgm").exists()
    assert not (tmp_path / "frames.csv").exists()


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["teleport"],
        ["simulate", "--formats", "png"],
        ["simulate", "--init", "random"],
        ["simulate", "--n", "0"],
        ["simulate", "--R", "heavy"],
    ],
)
def test_usage_errors_exit_two(argv, capsys):
    assert cli.main(argv) == 2
    assert capsys.readouterr().err


def test_invalid_mass_exits_one(tmp_path, capsys):
    code = cli.main(["simulate", "--R", "1.5", "--n", "10", "--t", "3", "--output-dir", str(tmp_path)])
    assert code == 1
    assert capsys.readouterr().err.startswith("error:")
    assert not (tmp_path / "frames.csv").exists()


def test_no_real_coin_exits_one(tmp_path, capsys):
    code = cli.main(["spectrum", "--R", "0.8", "--rho", "1", "--n", "6", "--output-dir", str(tmp_path)])
    assert code == 1
    assert "no real coin" in capsys.readouterr().err


def test_conservation_failure_exits_one(tmp_path, mocker, capsys):
    mocker.patch("diracwalk.cli.DiracWalk.simulate", side_effect=ConservationError(0.1, 1e-9))
    code = cli.main(["simulate", "--n", "10", "--t", "3", "--output-dir", str(tmp_path)])
    assert code == 1
    assert "error:" in capsys.readouterr().err


def test_coeffs_prints_coefficients(tmp_path, capsys):
    code = cli.main(["coeffs", "--R", "0.4", "--rho", "0.5236", "--output-dir", str(tmp_path)])
    assert code == 0
    out = capsys.readouterr().out
    values = {}
    for line in out.splitlines():
        if " = " in line:
            key, value = line.split(" = ", 1)
            values[key] = value
    assert float(values["r1"]) == pytest.approx(0.0759, abs=1e-3)
    assert float(values["r2"]) == pytest.approx(0.9134, abs=1e-3)
    assert "residual row_norm_g" in values
    assert (tmp_path / "coefficients.txt").exists()


def test_spectrum_writes_table(tmp_path):
    assert cli.main(["spectrum", "--R", "0.8", "--rho", "0.2", "--n", "6", "--output-dir", str(tmp_path)]) == 0
    with (tmp_path / "spectrum.csv").open() as fh:
        rows = list(csv.DictReader(fh))
    assert len(rows) == 12
    assert [int(row["k"]) for row in rows] == [k for k in range(6) for _ in range(2)]
    for row in rows:
        assert abs(float(row["modulus"]) - 1.0) <= 1e-10


def test_paths_writes_table(tmp_path):
    argv = ["paths", "--R", "0.8", "--rho", "0.2", "--n", "8", "--t", "2", "--spin", "minus"]
    argv += ["--output-dir", str(tmp_path)]
    assert cli.main(argv) == 0
    with (tmp_path / "paths.csv").open() as fh:
        rows = list(csv.DictReader(fh))
    assert sum(int(row["path_count"]) for row in rows) == 16


def test_paths_over_budget_exits_one(tmp_path, capsys):
    assert cli.main(["paths", "--n", "8", "--t", "13", "--output-dir", str(tmp_path)]) == 1
    assert "capped" in capsys.readouterr().err


def test_converge_massless(tmp_path, capsys):
    argv = ["converge", "--m", "0", "--base-n", "8", "--levels", "3", "--output-dir", str(tmp_path)]
    assert cli.main(argv) == 0
    assert "fitted order n/a" in capsys.readouterr().out
    with (tmp_path / "convergence.csv").open() as fh:
        rows = list(csv.DictReader(fh))
    assert len(rows) == 2
    assert _manifest(tmp_path / "manifest.txt")["estimated_order"] == "n/a"


def test_write_heatmap_zero_record(tmp_path):
    path = cli.write_heatmap(_record([[0.0, 0.0, 0.0], [0.0, 0.0, 0.0]]), tmp_path / "zero.pgm")
    _, pixels = _pgm(path)
    assert not pixels.any()


def test_write_heatmap_single_site(tmp_path):
    path = cli.write_heatmap(_record([[0.0, 1.0, 0.0, 0.0]]), tmp_path / "spike.pgm")
    _, pixels = _pgm(path)
    np.testing.assert_array_equal(pixels, [[0, 255, 0, 0]])


def test_write_heatmap_normalization(tmp_path):
    record = _record([[1.0, 0.0], [0.5, 0.0]])
    _, per_frame = _pgm(cli.write_heatmap(record, tmp_path / "frame.pgm", norm="frame"))
    _, global_ = _pgm(cli.write_heatmap(record, tmp_path / "global.pgm", norm="global"))
    np.testing.assert_array_equal(per_frame, [[255, 0], [255, 0]])
    np.testing.assert_array_equal(global_, [[255, 0], [128, 0]])
    with pytest.raises(ParameterError):
        cli.write_heatmap(record, tmp_path / "bad.pgm", norm="log")


def test_write_heatmap_wraps_long_rows(tmp_path):
    path = cli.write_heatmap(_record([np.linspace(0.0, 1.0, 40)]), tmp_path / "wide.pgm")
    lines = path.read_text().splitlines()
    assert lines[:3] == ["P2", "40 1", "255"]
    assert len(lines) == 3 + 3
    assert len(_pgm(path)[1][0]) == 40


def test_run_config_validation():
    config = run_config.RunConfig("simulate", formats=["csv"])
    assert config.formats == ("csv",)
    assert config.echo()["R"] == "0.80000000000000004"
    with pytest.raises(ConfigError):
        run_config.RunConfig("simulate", engine="sparse")
    with pytest.raises(ConfigError):
        run_config.RunConfig("simulate", formats=())
