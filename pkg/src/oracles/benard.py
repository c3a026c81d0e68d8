"""Classical Rayleigh–Bénard onset for a layer heated from below, without cells.

Stationary neutral modes satisfy (D^2 - k^2)^3 W = -R k^2 W. With
tau = (R k^2)^(1/3) the roots are q^2 = k^2 - tau and k^2 + tau (1 +- i sqrt 3) / 2.
Each q contributes cosh(q s) and sinh(q s) / q, s = z - 1/2, both even in q, so
the choice of square root is irrelevant and the 6x6 boundary determinant is
real. Conditions at every wall: W = 0, DW = 0 (rigid) or D^2 W = 0 (free),
and T = 0, i.e. (D^2 - k^2)^2 W = 0.
"""

import logging

import numpy as np
from numpy.typing import NDArray
from scipy.optimize import bisect, minimize_scalar

from exceptions.solver import NoSignChangeError
from schemas.oracle import BenardBoundaries, BenardSetup
from schemas.params import BoundaryKind

logger = logging.getLogger(__name__)

BISECTION_TOL = 1e-10
SCAN_START = 1.0
SCAN_FACTOR = 1.05
SCAN_LIMIT = 1e8

WALLS: dict[BenardBoundaries, tuple[BoundaryKind, BoundaryKind]] = {
    BenardBoundaries.RIGID_RIGID: (BoundaryKind.RIGID, BoundaryKind.RIGID),
    BenardBoundaries.RIGID_FREE: (BoundaryKind.RIGID, BoundaryKind.FREE),
    BenardBoundaries.FREE_FREE: (BoundaryKind.FREE, BoundaryKind.FREE),
}


def free_free_neutral(k: float) -> float:
    return (k**2 + np.pi**2) ** 3 / k**2


def _basis(q: complex, s: float) -> NDArray[np.complex128]:
    """Rows (f, f', f'') for f = cosh(q s) and g = sinh(q s) / q."""
    if abs(q) < 1e-12:
        return np.array([[1.0, s], [0.0, 1.0], [0.0, 0.0]], dtype=complex)
    return np.array(
        [
            [np.cosh(q * s), np.sinh(q * s) / q],
            [q * np.sinh(q * s), np.cosh(q * s)],
            [q**2 * np.cosh(q * s), q * np.sinh(q * s)],
        ],
    )


def characteristic_determinant(rayleigh: float, k: float, bottom: BoundaryKind, top: BoundaryKind) -> float:
    k2 = k**2
    tau = np.cbrt(rayleigh * k2)
    rotation = (1 + 1j * np.sqrt(3)) / 2
    roots = np.sqrt(np.array([k2 - tau, k2 + tau * rotation, k2 + tau * np.conj(rotation)], dtype=complex))

    matrix = np.zeros((6, 6), dtype=complex)
    for wall, (s, kind) in enumerate(((-0.5, bottom), (0.5, top))):
        for j, q in enumerate(roots):
            values = _basis(q, s)
            columns = slice(2 * j, 2 * j + 2)
            matrix[3 * wall, columns] = values[0]
            matrix[3 * wall + 1, columns] = values[1] if kind is BoundaryKind.RIGID else values[2]
            matrix[3 * wall + 2, columns] = (q**2 - k2) ** 2 * values[0]
    return float(np.linalg.det(matrix).real)


def benard_neutral(setup: BenardSetup) -> float:
    """Thermal Rayleigh number on the lowest stationary neutral curve at wavenumber k."""
    k = setup.wavenumber
    if setup.boundaries is BenardBoundaries.FREE_FREE:
        return free_free_neutral(k)

    bottom, top = WALLS[setup.boundaries]

    def determinant(rayleigh: float) -> float:
        return characteristic_determinant(rayleigh, k, bottom, top)

    low, f_low = SCAN_START, determinant(SCAN_START)
    while low < SCAN_LIMIT:
        high = low * SCAN_FACTOR
        f_high = determinant(high)
        if np.sign(f_high) != np.sign(f_low):
            root = float(bisect(determinant, low, high, xtol=BISECTION_TOL))
            logger.debug("%s k=%g: R=%.10g", setup.boundaries.value, k, root)
            return root
        low, f_low = high, f_high
    raise NoSignChangeError(k, SCAN_START, SCAN_LIMIT)


def benard_critical(boundaries: BenardBoundaries) -> tuple[float, float]:
    """(k_c, R_c) minimizing the neutral curve."""
    if boundaries is BenardBoundaries.FREE_FREE:
        k_c = np.pi / np.sqrt(2)
        return float(k_c), free_free_neutral(k_c)

    result = minimize_scalar(
        lambda k: benard_neutral(BenardSetup(boundaries=boundaries, wavenumber=k)),
        bounds=(1.0, 6.0),
        method="bounded",
        options={"xatol": 1e-8},
    )
    return float(result.x), float(result.fun)
