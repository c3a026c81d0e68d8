"""Light field of a purely absorbing suspension under oblique collimated irradiation.

The beam refracts at the top surface (Snell's law) and is attenuated along the
slant path by the cells themselves. For a non-scattering medium the transfer
equation has a closed-form solution, so nothing here is integrated numerically.
"""

import numpy as np
from numpy.typing import ArrayLike, NDArray

from exceptions.params import MeshMismatchError
from schemas.params import OpticalGeometry, SuspensionParams
from schemas.profiles import IntensityProfile

DEFAULT_REFRACTIVE_INDEX = 1.333


def refract(
    theta_i_deg: float,
    refractive_index: float = DEFAULT_REFRACTIVE_INDEX,
    optical_depth: float = 1.0,
) -> OpticalGeometry:
    theta_i = np.deg2rad(theta_i_deg)
    theta_0 = np.arcsin(np.sin(theta_i) / refractive_index)
    cos_0 = float(np.cos(theta_0))
    return OpticalGeometry(
        incidence_angle_rad=float(theta_i),
        refraction_angle_rad=float(theta_0),
        cos_refraction=cos_0,
        slant_factor=optical_depth / cos_0,
    )


def geometry_for(params: SuspensionParams) -> OpticalGeometry:
    return refract(params.incidence_angle_deg, params.refractive_index, params.optical_depth)


def slant(geometry: OpticalGeometry, optical_depth: float) -> float:
    return optical_depth / geometry.cos_refraction


def intensity_from_varpi(
    varpi: ArrayLike,
    geometry: OpticalGeometry,
    optical_depth: float,
    irradiation: float,
) -> NDArray[np.float64]:
    """G_s = I_t exp(tau_H varpi / cos theta_0), pointwise in the cumulative concentration."""
    return irradiation * np.exp(slant(geometry, optical_depth) * np.asarray(varpi, dtype=float))


def basic_intensity(
    z: NDArray[np.float64],
    varpi: NDArray[np.float64],
    geometry: OpticalGeometry,
    optical_depth: float,
    irradiation: float,
) -> IntensityProfile:
    if varpi.shape != z.shape:
        raise MeshMismatchError(z.size, varpi.size)
    values = intensity_from_varpi(varpi, geometry, optical_depth, irradiation)
    return IntensityProfile(z=z, values=values)


def perturbed_intensity_coefficient(
    intensity: IntensityProfile,
    geometry: OpticalGeometry,
    optical_depth: float,
) -> NDArray[np.float64]:
    """Multiplier c(z) with G_1 = -c(z) Phi(z), Phi = integral of Theta from z to the top."""
    return slant(geometry, optical_depth) * intensity.values


def radiative_flux(intensity: IntensityProfile, geometry: OpticalGeometry) -> NDArray[np.float64]:
    """Vertical radiative heat flux q_s.z; negative because the beam travels downward."""
    return -intensity.values * geometry.cos_refraction
