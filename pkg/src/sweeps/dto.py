from typing import Any

from schemas.neutral import BifurcationPoint, CriticalPoint, NeutralCurve

from .enums import RunStatus

SIGNIFICANT_DIGITS = 9


def rounded(value: float | None) -> float | None:
    if value is None:
        return None
    return float(f"{value:.{SIGNIFICANT_DIGITS}g}")


class CurveRun:
    """Class to hold the result of tracing one neutral curve"""

    def __init__(self, theta_i: float):
        self.theta_i = theta_i
        self.status = RunStatus.SUCCESS
        self.curve: NeutralCurve | None = None
        self.critical: CriticalPoint | None = None
        self.bifurcation: BifurcationPoint | None = None
        self.errors: list[str] = []

    @property
    def is_successful(self) -> bool:
        return self.status != RunStatus.FAILED

    def to_dict(self) -> dict[str, Any]:
        critical = self.critical
        return {
            "theta_i": rounded(self.theta_i),
            "k_c": rounded(critical.k_c) if critical else None,
            "R_c": rounded(critical.rayleigh_c) if critical else None,
            "lambda_c": rounded(critical.lambda_c) if critical else None,
            "branch": critical.branch_kind.value if critical else None,
            "mode": critical.mode if critical else None,
            "status": self.status.value,
        }
