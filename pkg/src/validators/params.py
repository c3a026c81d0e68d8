import logging
from collections import defaultdict

from exceptions.base import ValidationError
from schemas.params import SuspensionParams, TaxisForm

logger = logging.getLogger(__name__)

MIN_MESH_POINTS = 51
MAX_INCIDENCE_DEG = 80.0


class SuspensionParamsValidator:
    def __init__(self, params: SuspensionParams):
        self.params = params
        self.errors: dict[str, list[str]] = defaultdict(list)

    def validate(self) -> SuspensionParams:
        self.validate_positive()
        self.validate_incidence_angle()
        self.validate_mesh()
        self.validate_swim_speed()
        self.validate_refractive_index()
        self.warn_taxis_range()

        if self.errors:
            raise ValidationError(errors=self.errors)
        return self.params

    def validate_positive(self) -> None:
        for field in ("prandtl", "lewis", "optical_depth", "irradiation_magnitude", "critical_intensity"):
            value = getattr(self.params, field)
            if not value > 0:
                self.errors[field].append(f"{field} must be > 0 (got {value:g})")

    def validate_incidence_angle(self) -> None:
        angle = self.params.incidence_angle_deg
        if not 0.0 <= angle <= MAX_INCIDENCE_DEG:
            self.errors["incidence_angle_deg"].append(
                f"incidence angle out of range [0, {MAX_INCIDENCE_DEG:g}] degrees (got {angle:g})",
            )

    def validate_mesh(self) -> None:
        if self.params.mesh_points < MIN_MESH_POINTS:
            self.errors["mesh_points"].append(
                f"mesh below {MIN_MESH_POINTS} points (got {self.params.mesh_points})",
            )

    def validate_swim_speed(self) -> None:
        if self.params.swim_speed < 0:
            self.errors["swim_speed"].append(f"swim_speed must be >= 0 (got {self.params.swim_speed:g})")

    def validate_refractive_index(self) -> None:
        if self.params.refractive_index < 1:
            self.errors["refractive_index"].append(
                f"refractive_index must be >= 1 (got {self.params.refractive_index:g})",
            )

    def warn_taxis_range(self) -> None:
        params = self.params
        if params.taxis_form is TaxisForm.SINE and params.irradiation_magnitude > 2 * params.critical_intensity:
            logger.warning(
                "Sine phototaxis is only sign-correct for G <= 2*G_c=%g but I_t=%g",
                2 * params.critical_intensity,
                params.irradiation_magnitude,
            )


def validate(raw: SuspensionParams) -> SuspensionParams:
    return SuspensionParamsValidator(raw).validate()
