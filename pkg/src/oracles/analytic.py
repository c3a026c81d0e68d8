from collections.abc import Callable

import numpy as np
from numpy.typing import ArrayLike, NDArray


def analytic_concentration(swim_speed: float, taxis_amplitude: float) -> Callable[[ArrayLike], NDArray[np.float64]]:
    """Closed-form basic concentration for constant phototaxis M = M_0.

    dn_s/dz = lambda n_s with unit mass gives n_s = lambda e^(lambda z) / (e^lambda - 1),
    lambda = V_c M_0; lambda = 0 is the uniform suspension.
    """
    rate = swim_speed * taxis_amplitude

    def profile(z: ArrayLike) -> NDArray[np.float64]:
        z = np.asarray(z, dtype=float)
        if rate == 0:
            return np.ones_like(z)
        if rate > 0:
            return rate * np.exp(rate * (z - 1)) / -np.expm1(-rate)
        return rate * np.exp(rate * z) / np.expm1(rate)

    return profile


def analytic_cumulative(swim_speed: float, taxis_amplitude: float) -> Callable[[ArrayLike], NDArray[np.float64]]:
    """varpi for the same profile: integral of n_s from the top, so varpi(0) = -1 and varpi(1) = 0."""
    rate = swim_speed * taxis_amplitude

    def profile(z: ArrayLike) -> NDArray[np.float64]:
        z = np.asarray(z, dtype=float)
        if rate == 0:
            return z - 1
        return np.expm1(rate * z) / np.expm1(rate) - 1

    return profile
