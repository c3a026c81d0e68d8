import csv
import json

import numpy as np
import pytest
from click.testing import CliRunner

from config import VERSION
from main import cli

NO_CELLS = """\
swim_speed = 0
rayleigh_bio = 0
rayleigh_thermal = 0
mesh_points = 51
"""


@pytest.fixture
def runner() -> CliRunner:
    return CliRunner(mix_stderr=False)


def test_version(runner):
    result = runner.invoke(cli, ["--version"])
    assert result.exit_code == 0
    assert VERSION in result.output


class TestValidate:
    def test_preset(self, runner):
        result = runner.invoke(cli, ["validate", "--config", "stress_free_top"])
        assert result.exit_code == 0, result.stderr
        assert "incidence_angle_deg = 0.0" in result.output
        assert result.output.rstrip().endswith("OK")

    def test_missing_file(self, runner, tmp_path):
        result = runner.invoke(cli, ["validate", "--config", str(tmp_path / "absent.cfg")])
        assert result.exit_code == 2
        assert "Error:" in result.stderr

    def test_invalid_value(self, runner, problem_file):
        path = problem_file("mesh_points = 20\n")
        result = runner.invoke(cli, ["validate", "--config", str(path)])
        assert result.exit_code == 2
        assert "mesh_points" in result.stderr

    def test_top_override(self, runner):
        result = runner.invoke(cli, ["validate", "--config", "stress_free_top", "--top", "rigid"])
        assert result.exit_code == 0
        assert "top_boundary = rigid" in result.output


class TestBasicState:
    def test_uniform_profile(self, runner, problem_file, tmp_path):
        out = tmp_path / "out"
        result = runner.invoke(cli, ["basic-state", "--config", str(problem_file(NO_CELLS)), "--out", str(out)])
        assert result.exit_code == 0, result.stderr
        assert "(uniform)" in result.output

        with open(out / "basic_state.csv", encoding="utf-8") as f:
            rows = list(csv.DictReader(f))
        assert len(rows) == 51
        assert all(float(row["n_s"]) == pytest.approx(1.0) for row in rows)

        manifest = json.loads((out / "manifest.json").read_text(encoding="utf-8"))
        assert manifest["command"] == "basic-state"
        assert manifest["version"] == VERSION

    def test_angle_out_of_range(self, runner, tmp_path):
        result = runner.invoke(
            cli,
            ["basic-state", "--config", "stress_free_top", "--theta", "85", "--out", str(tmp_path)],
        )
        assert result.exit_code == 2


class TestGrowth:
    def test_thermal_diffusion(self, runner, problem_file, tmp_path):
        args = [
            "growth",
            "--config",
            str(problem_file(NO_CELLS)),
            "--out",
            str(tmp_path),
            "--k",
            "2",
            "--normalization",
            "temperature",
            "--sigma=-12.87",
            "--eigenfunctions",
        ]
        result = runner.invoke(cli, args)
        assert result.exit_code == 0, result.stderr
        line = next(line for line in result.output.splitlines() if line.startswith("Re(sigma)"))
        assert float(line.split("=")[1]) == pytest.approx(-(4.0 + np.pi**2), rel=1e-5)
        assert "mode = undefined (W vanishes)" in result.output
        assert (tmp_path / "eigenfunctions.csv").is_file()

    @pytest.mark.parametrize("k", ["0", "-1"])
    def test_rejects_wavenumber(self, runner, k, tmp_path):
        result = runner.invoke(cli, ["growth", "--config", "stress_free_top", "--k", k, "--out", str(tmp_path)])
        assert result.exit_code == 2
        assert "--k" in result.stderr
        assert "Traceback" not in result.output


class TestSweep:
    def test_empty_angle_list(self, runner, tmp_path):
        result = runner.invoke(cli, ["sweep", "--config", "stress_free_top", "--theta", ",", "--out", str(tmp_path)])
        assert result.exit_code == 2

    def test_unparsable_angles(self, runner, tmp_path):
        result = runner.invoke(cli, ["sweep", "--config", "stress_free_top", "--theta", "a,b", "--out", str(tmp_path)])
        assert result.exit_code == 2
        assert "--theta" in result.stderr

    def test_free_free_curve(self, runner, tmp_path):
        args = [
            "neutral-curve",
            "--config",
            "benard_free_free",
            "--out",
            str(tmp_path),
            "--sweep",
            "thermal",
            "--k-min",
            "1.8",
            "--k-max",
            "2.8",
            "--k-step",
            "0.2",
            "--stationary",
        ]
        result = runner.invoke(cli, args)
        assert result.exit_code == 0, result.stderr
        assert (tmp_path / "neutral_curve_theta_0.csv").is_file()
        assert (tmp_path / "neutral_curves.svg").is_file()
        (summary,) = json.loads((tmp_path / "summary.json").read_text(encoding="utf-8"))
        assert summary["status"] == "success"
        assert summary["R_c"] == pytest.approx(27 * np.pi**4 / 4, rel=5e-3)
        manifest = json.loads((tmp_path / "manifest.json").read_text(encoding="utf-8"))
        assert manifest["sweep_values"] == [0.0]


def test_selftest(runner):
    result = runner.invoke(cli, ["selftest"])
    assert result.exit_code == 0, result.output
    assert "FAIL" not in result.output
