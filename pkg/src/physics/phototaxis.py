"""Phototaxis response M(G): mean vertical swimming component as a function of light intensity.

M is non-negative below the critical intensity G_c (cells swim towards light)
and negative above it. Only that sign structure is fixed by the model; the
concrete form is pluggable.
"""

from abc import ABC, abstractmethod

import numpy as np
from numpy.typing import ArrayLike, NDArray

from exceptions.params import TaxisDomainError
from schemas.params import SuspensionParams, TaxisForm

DEFAULT_AMPLITUDE = 0.8


class TaxisFunction(ABC):
    def __init__(self, critical_intensity: float, amplitude: float = DEFAULT_AMPLITUDE):
        self.critical_intensity = critical_intensity
        self.amplitude = amplitude

    @abstractmethod
    def value(self, G: NDArray[np.float64]) -> NDArray[np.float64]: ...

    @abstractmethod
    def derivative(self, G: NDArray[np.float64]) -> NDArray[np.float64]: ...

    @abstractmethod
    def curvature(self, G: NDArray[np.float64]) -> NDArray[np.float64]:
        """Second derivative d2M/dG2."""

    def __repr__(self) -> str:
        return f"{type(self).__name__}(G_c={self.critical_intensity:g}, A={self.amplitude:g})"


class SineTaxis(TaxisFunction):
    """M(G) = A sin(pi G / G_c); sign-correct for 0 <= G <= 2 G_c."""

    def value(self, G: NDArray[np.float64]) -> NDArray[np.float64]:
        return self.amplitude * np.sin(np.pi * G / self.critical_intensity)

    def derivative(self, G: NDArray[np.float64]) -> NDArray[np.float64]:
        scale = np.pi / self.critical_intensity
        return self.amplitude * scale * np.cos(scale * G)

    def curvature(self, G: NDArray[np.float64]) -> NDArray[np.float64]:
        scale = np.pi / self.critical_intensity
        return -self.amplitude * scale**2 * np.sin(scale * G)


class ConstantTaxis(TaxisFunction):
    """M(G) = A everywhere; gives the closed-form exponential basic state."""

    def value(self, G: NDArray[np.float64]) -> NDArray[np.float64]:
        return np.full_like(G, self.amplitude)

    def derivative(self, G: NDArray[np.float64]) -> NDArray[np.float64]:
        return np.zeros_like(G)

    def curvature(self, G: NDArray[np.float64]) -> NDArray[np.float64]:
        return np.zeros_like(G)


TAXIS_FORMS: dict[TaxisForm, type[TaxisFunction]] = {
    TaxisForm.SINE: SineTaxis,
    TaxisForm.CONSTANT: ConstantTaxis,
}


def taxis_for(params: SuspensionParams) -> TaxisFunction:
    return TAXIS_FORMS[params.taxis_form](params.critical_intensity, params.taxis_amplitude)


def _intensity(G: ArrayLike) -> NDArray[np.float64]:
    values = np.asarray(G, dtype=float)
    if values.size and np.min(values) < 0:
        raise TaxisDomainError(float(np.min(values)))
    return values


def taxis_value(f: TaxisFunction, G: ArrayLike) -> NDArray[np.float64]:
    return f.value(_intensity(G))


def taxis_derivative(f: TaxisFunction, G: ArrayLike) -> NDArray[np.float64]:
    return f.derivative(_intensity(G))


def taxis_curvature(f: TaxisFunction, G: ArrayLike) -> NDArray[np.float64]:
    return f.curvature(_intensity(G))
