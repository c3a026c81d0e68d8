from collections.abc import Callable

import numpy as np
from numpy.typing import ArrayLike, NDArray

from schemas.oracle import DerivativeCheckReport

DEFAULT_POINTS = 1001
DEFAULT_STEP = 1e-6


def fd_derivative_check(
    f: Callable[[NDArray[np.float64]], ArrayLike],
    df: Callable[[NDArray[np.float64]], ArrayLike],
    domain: tuple[float, float] = (0.0, 1.0),
    tol: float = 1e-6,
    points: int = DEFAULT_POINTS,
    step: float = DEFAULT_STEP,
) -> DerivativeCheckReport:
    """Compare df against central differences of f on a dense grid.

    Errors are relative to the largest |df| on the grid, so the check does not
    loosen for functions with small derivatives or fail near zeros of df.
    """
    x = np.linspace(domain[0] + step, domain[1] - step, points)
    numeric = (np.asarray(f(x + step), dtype=float) - np.asarray(f(x - step), dtype=float)) / (2 * step)
    analytic = np.asarray(df(x), dtype=float)
    scale = max(float(np.max(np.abs(analytic))), np.finfo(float).tiny)
    error = np.abs(numeric - analytic) / scale
    worst = int(np.argmax(error))
    return DerivativeCheckReport(
        passed=bool(error[worst] <= tol),
        max_error=float(error[worst]),
        location=float(x[worst]),
        tolerance=tol,
    )
