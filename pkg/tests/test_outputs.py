import csv
import json
from datetime import datetime, timezone

import numpy as np
import pytest

from exceptions.base import ValidationError
from exceptions.params import EmptySweepError
from outputs.plots import plot_curves
from outputs.summary import write_json, write_manifest, write_residual_history
from outputs.tables import curve_columns, eigenfunction_columns, format_value, write_csv
from schemas.common import RunManifest
from schemas.neutral import CriticalKind, CriticalPoint, NeutralCurve, NeutralPoint
from schemas.params import SuspensionParams, SweptParameter
from schemas.stability import BranchKind, GrowthResult
from sweeps.dto import CurveRun, rounded
from sweeps.enums import RunStatus
from sweeps.runner import CurveTask, SweepRunner, run_curve


@pytest.fixture
def curve() -> NeutralCurve:
    points = [
        NeutralPoint(k=2.0, rayleigh=120.123456789123, im_sigma=0.5, branch=BranchKind.OSCILLATORY, mode=1),
        NeutralPoint(k=1.0, rayleigh=150.0, im_sigma=0.0, branch=BranchKind.STATIONARY, mode=1),
        NeutralPoint(k=3.0, converged=False, error="no sign change"),
    ]
    return NeutralCurve(
        params=SuspensionParams(),
        swept=SweptParameter.RAYLEIGH_BIO,
        fixed_value=50.0,
        k_step=1.0,
        points=points,
    )


class TestTables:
    @pytest.mark.parametrize(
        "value, expected",
        [
            (None, ""),
            ("gap", "gap"),
            (3, "3"),
            (np.int64(7), "7"),
            (1 / 3, "0.333333333"),
            (123456789.123, "123456789"),
            (float("nan"), "nan"),
        ],
    )
    def test_format_value(self, value, expected):
        assert format_value(value) == expected

    def test_curve_csv(self, tmp_path, curve):
        path = write_csv(tmp_path / "out" / "curve.csv", curve_columns(curve))
        with open(path, encoding="utf-8") as f:
            rows = list(csv.reader(f))
        assert rows[0] == ["k", "R", "Im_sigma", "branch", "mode"]
        assert rows[1] == ["1", "150", "0", "stationary", "1"]
        assert rows[2] == ["2", "120.123457", "0.5", "oscillatory", "1"]
        assert rows[3][3] == "gap"
        assert rows[3][4] == ""

    def test_deterministic(self, tmp_path, curve):
        first = write_csv(tmp_path / "a.csv", curve_columns(curve)).read_bytes()
        second = write_csv(tmp_path / "b.csv", curve_columns(curve)).read_bytes()
        assert first == second

    def test_eigenfunction_columns(self):
        z = np.linspace(0.0, 1.0, 5)
        states = np.vstack([np.full(5, i + 1j * i) for i in range(9)])
        result = GrowthResult(sigma=-1 + 0j, z=z, states=states, converged=True, iterations=1, residual=0.0)
        columns = eigenfunction_columns(result)
        assert list(columns) == ["z", "Re_W", "Im_W", "Re_Phi", "Im_Phi", "Re_Theta", "Im_Theta", "Re_T", "Im_T"]
        assert columns["Re_Theta"][0] == -5.0
        assert columns["Im_T"][0] == 7.0


class TestSummary:
    def test_json(self, tmp_path):
        path = write_json(tmp_path / "summary.json", [{"theta_i": 0.0}])
        assert json.loads(path.read_text(encoding="utf-8")) == [{"theta_i": 0.0}]

    def test_residual_history(self, tmp_path):
        path = write_residual_history(tmp_path, [1.0, 0.1], "stalled")
        assert json.loads(path.read_text(encoding="utf-8")) == {"message": "stalled", "residuals": [1.0, 0.1]}

    def test_manifest(self, tmp_path):
        manifest = RunManifest(
            command="sweep",
            params=SuspensionParams(),
            sweep_parameter="bio",
            sweep_values=[40.0, 0.0],
            output_dir=str(tmp_path),
            version="0.1.0",
            started_at=datetime(2024, 1, 1, tzinfo=timezone.utc),
        )
        payload = json.loads(write_manifest(tmp_path, manifest).read_text(encoding="utf-8"))
        assert payload["sweep_values"] == [0.0, 40.0]
        assert payload["params"]["swim_speed"] == 10.0

    def test_manifest_rejects_nan(self, tmp_path):
        with pytest.raises(ValueError):
            RunManifest(
                command="sweep",
                params=SuspensionParams(),
                sweep_values=[float("nan")],
                output_dir=str(tmp_path),
                version="0.1.0",
                started_at=datetime(2024, 1, 1, tzinfo=timezone.utc),
            )


class TestPlots:
    def test_svg(self, tmp_path, curve):
        path = plot_curves(tmp_path / "curves.svg", {0.0: curve, 40.0: curve})
        text = path.read_text(encoding="utf-8")
        assert text.lstrip().startswith("<?xml")
        assert "<svg" in text

    def test_reproducible(self, tmp_path, curve):
        first = plot_curves(tmp_path / "a.svg", {0.0: curve}).read_bytes()
        second = plot_curves(tmp_path / "b.svg", {0.0: curve}).read_bytes()
        assert first == second


class TestCurveRun:
    def test_rounded(self):
        assert rounded(1 / 3) == 0.333333333
        assert rounded(None) is None

    def test_empty_run(self):
        run = CurveRun(20.0)
        assert run.is_successful
        assert run.to_dict() == {
            "theta_i": 20.0,
            "k_c": None,
            "R_c": None,
            "lambda_c": None,
            "branch": None,
            "mode": None,
            "status": "success",
        }

    def test_summary_keys(self):
        run = CurveRun(0.0)
        run.critical = CriticalPoint(
            k_c=2.5,
            rayleigh_c=100.0,
            lambda_c=2 * np.pi / 2.5,
            branch_kind=CriticalKind.STATIONARY,
            mode=1,
        )
        run.status = RunStatus.PARTIAL
        summary = run.to_dict()
        assert summary["lambda_c"] == pytest.approx(2.51327412)
        assert summary["branch"] == "stationary"
        assert summary["status"] == "partial"
        assert run.is_successful

    def test_failed_run(self):
        run = CurveRun(0.0)
        run.status = RunStatus.FAILED
        assert not run.is_successful


class TestSweepRunner:
    def test_empty_sweep(self, logger):
        runner = SweepRunner(CurveTask(params=SuspensionParams()), logger)
        with pytest.raises(EmptySweepError):
            runner.run_all([])

    def test_tasks_carry_angles(self, logger):
        runner = SweepRunner(CurveTask(params=SuspensionParams()), logger)
        tasks = runner.tasks([0.0, 40.0])
        assert [task.params.incidence_angle_deg for task in tasks] == [0.0, 40.0]

    def test_invalid_angle(self, logger):
        runner = SweepRunner(CurveTask(params=SuspensionParams()), logger)
        with pytest.raises(ValidationError):
            runner.tasks([85.0])

    def test_failure_is_recorded(self, benard_free_free):
        # the minimum of the free-free curve lies below this range
        task = CurveTask(
            params=benard_free_free,
            which=SweptParameter.RAYLEIGH_THERMAL,
            k_range=(3.0, 3.6),
            k_step=0.2,
            stationary=True,
        )
        run = run_curve(task)
        assert run.status is RunStatus.FAILED
        assert run.curve is not None
        assert "Minimum not bracketed" in run.errors[0]

    def test_in_process_sweep(self, benard_free_free, logger):
        task = CurveTask(
            params=benard_free_free,
            which=SweptParameter.RAYLEIGH_THERMAL,
            k_range=(1.8, 2.8),
            k_step=0.2,
            stationary=True,
        )
        runner = SweepRunner(task, logger, jobs=1)
        (run,) = runner.run_all([0.0])
        assert run.status is RunStatus.SUCCESS
        assert run.critical.rayleigh_c == pytest.approx(657.51, rel=5e-3)
        assert runner.get_summary()[0]["status"] == "success"
