import math
from enum import Enum

from pydantic import BaseModel, ConfigDict

from .params import SuspensionParams, SweptParameter
from .stability import BranchKind


class NeutralPoint(BaseModel):
    model_config = ConfigDict(frozen=True)

    k: float
    rayleigh: float = math.nan
    im_sigma: float = math.nan
    re_sigma: float = math.nan
    branch: BranchKind | None = None
    mode: int | None = None
    converged: bool = True
    error: str | None = None


class NeutralCurve(BaseModel):
    model_config = ConfigDict(frozen=True)

    params: SuspensionParams
    swept: SweptParameter
    fixed_value: float
    k_step: float
    points: list[NeutralPoint]

    @property
    def valid_points(self) -> list[NeutralPoint]:
        return [point for point in self.points if point.converged]

    @property
    def gaps(self) -> list[float]:
        return [point.k for point in self.points if not point.converged]


class CriticalKind(str, Enum):
    STATIONARY = "stationary"
    OVERSTABLE = "overstable"


class CriticalPoint(BaseModel):
    model_config = ConfigDict(frozen=True)

    k_c: float
    rayleigh_c: float
    lambda_c: float
    branch_kind: CriticalKind
    mode: int


class BifurcationPoint(BaseModel):
    """Wavenumber where an oscillatory branch joins the stationary one."""

    model_config = ConfigDict(frozen=True)

    k_b: float
    k_lower: float
    bracketed: bool
