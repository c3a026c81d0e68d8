from typing import Any

import numpy as np
from numpy.typing import NDArray
from pydantic import BaseModel, ConfigDict, Field

from .params import OpticalGeometry, SuspensionParams

Profile = NDArray[np.float64]


class IntensityProfile(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    z: Profile
    values: Profile


class BasicState(BaseModel):
    """Equilibrium (no-flow) state sampled on the uniform mesh.

    ``solution`` is the dense output of the shooting integrator; it evaluates
    (varpi, n_s) anywhere in [0, 1] at integrator accuracy.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    params: SuspensionParams
    geometry: OpticalGeometry
    z: Profile
    varpi: Profile
    n_s: Profile
    T_s: Profile
    G_s: Profile
    M_s: Profile
    dMdG: Profile
    top_concentration: float
    shooting_residual: float
    iterations: int
    solution: Any = Field(default=None, exclude=True, repr=False)
    taxis: Any = Field(default=None, exclude=True, repr=False)

    def columns(self) -> dict[str, Profile]:
        return {
            "z": self.z,
            "varpi": self.varpi,
            "n_s": self.n_s,
            "T_s": self.T_s,
            "G_s": self.G_s,
            "M_s": self.M_s,
            "dMdG": self.dMdG,
        }


class Sublayer(BaseModel):
    model_config = ConfigDict(frozen=True)

    position: float
    peak_concentration: float
    uniform: bool
