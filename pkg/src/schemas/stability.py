from enum import Enum
from typing import Any

import numpy as np
from numpy.typing import NDArray
from pydantic import BaseModel, ConfigDict, Field

from .params import BoundaryKind
from .profiles import BasicState, Profile


class BranchKind(str, Enum):
    STATIONARY = "stationary"
    OSCILLATORY = "oscillatory"


class Normalization(str, Enum):
    VELOCITY = "velocity"
    TEMPERATURE = "temperature"


class StabilityProblem(BaseModel):
    """One eigenproblem: basic state, wavenumber, Rayleigh numbers and coefficient profiles."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    basic: BasicState
    wavenumber: float
    rayleigh_bio: float
    rayleigh_thermal: float
    top: BoundaryKind
    bottom: BoundaryKind
    aleph0: Profile
    aleph1: Profile
    aleph2: Profile
    concentration_gradient: Profile
    interpolant: Any = Field(exclude=True, repr=False)

    @property
    def z(self) -> Profile:
        return self.basic.z


class GrowthSeed(BaseModel):
    """Sinusoidal starting guess for the Newton iterations."""

    model_config = ConfigDict(frozen=True)

    sigma: complex = 0j
    mode: int = 1


class GrowthResult(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    sigma: complex
    z: Profile
    states: NDArray[np.complex128]
    converged: bool
    iterations: int
    residual: float
    # collocation defect on the final solver mesh, relative to 1 + |f|
    equation_residual: float = float("nan")
    mesh_nodes: int = 0
    normalization: Normalization = Normalization.VELOCITY
    message: str = ""

    @property
    def W(self) -> NDArray[np.complex128]:
        return self.states[0]

    @property
    def Phi(self) -> NDArray[np.complex128]:
        return self.states[4]

    @property
    def Theta(self) -> NDArray[np.complex128]:
        return -self.states[5]

    @property
    def T(self) -> NDArray[np.complex128]:
        return self.states[7]
