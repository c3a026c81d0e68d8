from enum import Enum

from pydantic import BaseModel, ConfigDict


class BoundaryKind(str, Enum):
    FREE = "free"
    RIGID = "rigid"


class TaxisForm(str, Enum):
    SINE = "sine"
    CONSTANT = "constant"


class SweptParameter(str, Enum):
    RAYLEIGH_BIO = "bio"
    RAYLEIGH_THERMAL = "thermal"


class SuspensionParams(BaseModel):
    """Dimensionless groups, geometry, illumination and discretization of one problem.

    Defaults are the stress-free regime with normal incidence.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    prandtl: float = 5.0
    lewis: float = 4.0
    swim_speed: float = 10.0
    optical_depth: float = 0.5
    irradiation_magnitude: float = 0.8
    critical_intensity: float = 0.63
    incidence_angle_deg: float = 0.0
    refractive_index: float = 1.333
    rayleigh_bio: float = 0.0
    rayleigh_thermal: float = 50.0
    top_boundary: BoundaryKind = BoundaryKind.FREE
    bottom_boundary: BoundaryKind = BoundaryKind.RIGID
    mesh_points: int = 101
    taxis_form: TaxisForm = TaxisForm.SINE
    taxis_amplitude: float = 0.8

    def rayleigh(self, which: SweptParameter) -> float:
        if which is SweptParameter.RAYLEIGH_BIO:
            return self.rayleigh_bio
        return self.rayleigh_thermal

    def with_rayleigh(self, which: SweptParameter, value: float) -> "SuspensionParams":
        field = "rayleigh_bio" if which is SweptParameter.RAYLEIGH_BIO else "rayleigh_thermal"
        return self.model_copy(update={field: value})


class OpticalGeometry(BaseModel):
    model_config = ConfigDict(frozen=True)

    incidence_angle_rad: float
    refraction_angle_rad: float
    cos_refraction: float
    slant_factor: float
