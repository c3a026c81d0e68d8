import math
from datetime import datetime
from typing import Any

from pydantic import BaseModel, field_validator

from .params import SuspensionParams


class RunManifest(BaseModel):
    command: str
    params: SuspensionParams
    sweep_parameter: str | None = None
    sweep_values: list[float] = []
    output_dir: str
    version: str
    started_at: datetime
    elapsed_seconds: float = 0.0
    extra: dict[str, Any] = {}

    @field_validator("sweep_values")
    @classmethod
    def validate_sweep_values(cls, values: list[float]) -> list[float]:
        if not all(math.isfinite(value) for value in values):
            raise ValueError("sweep values must be finite")
        return sorted(values)
