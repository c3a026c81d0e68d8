from enum import Enum

from pydantic import BaseModel, ConfigDict, field_validator


class BenardBoundaries(str, Enum):
    RIGID_RIGID = "rigid-rigid"
    RIGID_FREE = "rigid-free"
    FREE_FREE = "free-free"


class BenardSetup(BaseModel):
    model_config = ConfigDict(frozen=True)

    boundaries: BenardBoundaries
    wavenumber: float

    @field_validator("wavenumber")
    @classmethod
    def validate_wavenumber(cls, value: float) -> float:
        if value <= 0:
            raise ValueError("wavenumber must be positive")
        return value


class DerivativeCheckReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    passed: bool
    max_error: float
    location: float
    tolerance: float


class SelfTestCase(BaseModel):
    name: str
    expected: str
    observed: str
    passed: bool
