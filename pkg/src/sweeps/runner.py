import logging
from concurrent.futures import ProcessPoolExecutor
from typing import Any

from pydantic import BaseModel, ConfigDict

from exceptions.base import BiostabError
from exceptions.params import EmptySweepError
from schemas.params import SuspensionParams, SweptParameter
from solvers.neutral_curve import critical_point, oscillatory_bifurcation, trace
from validators.params import validate

from .dto import CurveRun
from .enums import RunStatus

logger = logging.getLogger(__name__)


class CurveTask(BaseModel):
    """Everything a worker process needs to trace one curve."""

    model_config = ConfigDict(frozen=True)

    params: SuspensionParams
    which: SweptParameter = SweptParameter.RAYLEIGH_BIO
    k_range: tuple[float, float] = (0.5, 10.0)
    k_step: float = 0.1
    mode: int = 1
    stationary: bool = False


def run_curve(task: CurveTask) -> CurveRun:
    """Trace one curve and locate its critical point; failures are recorded, never raised."""
    run = CurveRun(task.params.incidence_angle_deg)
    try:
        run.curve = trace(
            task.params,
            task.k_range,
            task.k_step,
            task.which,
            mode=task.mode,
            stationary=task.stationary,
        )
        run.bifurcation = oscillatory_bifurcation(run.curve)
        run.critical = critical_point(run.curve)
        if run.curve.gaps:
            run.status = RunStatus.PARTIAL
            run.errors.extend(f"k={k:g}: no neutral point" for k in run.curve.gaps)
    except BiostabError as e:
        run.status = RunStatus.FAILED
        run.errors.append(e.detail)
    except Exception as e:
        run.status = RunStatus.FAILED
        run.errors.append(f"Curve tracing failed: {e!s}")
    return run


class SweepRunner:
    """Traces one neutral curve per incidence angle, fanning the lines out to worker processes"""

    def __init__(self, base: CurveTask, logger: logging.Logger, jobs: int = 1):
        self.base = base
        self.logger = logger
        self.jobs = max(1, jobs)
        self.results: list[CurveRun] = []

    def tasks(self, thetas: list[float]) -> list[CurveTask]:
        if not thetas:
            raise EmptySweepError()
        return [
            self.base.model_copy(
                update={"params": validate(self.base.params.model_copy(update={"incidence_angle_deg": theta}))},
            )
            for theta in thetas
        ]

    def run_all(self, thetas: list[float]) -> list[CurveRun]:
        tasks = self.tasks(thetas)
        self.logger.info(f"Tracing {len(tasks)} neutral curves with {self.jobs} worker(s)")

        if self.jobs == 1 or len(tasks) == 1:
            self.results = [run_curve(task) for task in tasks]
        else:
            with ProcessPoolExecutor(max_workers=min(self.jobs, len(tasks))) as pool:
                # map keeps the input order
                self.results = list(pool.map(run_curve, tasks))

        for run in self.results:
            if run.is_successful and run.critical:
                self.logger.info(
                    f"theta_i={run.theta_i:g}: k_c={run.critical.k_c:.6g} "
                    f"R_c={run.critical.rayleigh_c:.6g} ({run.status.value})",
                )
            else:
                self.logger.error(f"theta_i={run.theta_i:g}: {run.errors}")

        successful = sum(1 for run in self.results if run.is_successful)
        if successful < len(self.results):
            self.logger.warning(f"Traced {successful} out of {len(self.results)} curves successfully")
        return self.results

    def get_summary(self) -> list[dict[str, Any]]:
        return [run.to_dict() for run in self.results]
