"""Install check: every oracle against its known value, plus two quick solver runs."""

import logging
from collections.abc import Callable

import numpy as np

from physics.optics import refract
from physics.phototaxis import SineTaxis
from schemas.oracle import BenardBoundaries, BenardSetup, SelfTestCase
from schemas.params import BoundaryKind, SuspensionParams, TaxisForm
from schemas.stability import GrowthSeed, Normalization
from solvers.basic_state import solve_basic_state
from solvers.stability import assemble, growth_rate

from .analytic import analytic_concentration
from .benard import benard_critical, benard_neutral
from .derivatives import fd_derivative_check

logger = logging.getLogger(__name__)


def _close(observed: float, expected: float, rel: float) -> bool:
    return abs(observed - expected) <= rel * abs(expected)


def free_free_closed_form() -> SelfTestCase:
    observed = benard_neutral(BenardSetup(boundaries=BenardBoundaries.FREE_FREE, wavenumber=np.pi / np.sqrt(2)))
    return SelfTestCase(
        name="benard free-free at k = pi/sqrt(2)",
        expected="657.511",
        observed=f"{observed:.6f}",
        passed=_close(observed, 27 * np.pi**4 / 4, 1e-12),
    )


def benard_minimum(boundaries: BenardBoundaries, k_c: float, rayleigh_c: float) -> SelfTestCase:
    k, rayleigh = benard_critical(boundaries)
    return SelfTestCase(
        name=f"benard {boundaries.value} critical point",
        expected=f"({k_c}, {rayleigh_c})",
        observed=f"({k:.4f}, {rayleigh:.2f})",
        passed=_close(k, k_c, 5e-3) and _close(rayleigh, rayleigh_c, 5e-3),
    )


def analytic_bottom_value() -> SelfTestCase:
    observed = float(analytic_concentration(1.0, 1.0)(0.0))
    return SelfTestCase(
        name="analytic concentration, lambda = 1, n_s(0)",
        expected="0.5820",
        observed=f"{observed:.4f}",
        passed=_close(observed, 1 / (np.e - 1), 1e-12),
    )


def derivative_checks() -> SelfTestCase:
    taxis = SineTaxis(0.63)
    good = fd_derivative_check(np.sin, np.cos)
    bad = fd_derivative_check(np.sin, np.sin)
    taxis_pair = fd_derivative_check(taxis.value, taxis.derivative, (0.0, 1.26))
    return SelfTestCase(
        name="finite-difference audit (sin/cos, sin/sin, taxis)",
        expected="pass, fail, pass",
        observed=", ".join("pass" if report.passed else "fail" for report in (good, bad, taxis_pair)),
        passed=good.passed and not bad.passed and taxis_pair.passed,
    )


def snell_bound() -> SelfTestCase:
    lowest = min(refract(theta).cos_refraction for theta in np.arange(0.0, 90.05, 0.1))
    return SelfTestCase(
        name="cos(theta_0) over 0..90 degrees",
        expected=">= 0.661",
        observed=f"{lowest:.4f}",
        passed=lowest >= 0.661,
    )


def constant_taxis_basic_state() -> SelfTestCase:
    params = SuspensionParams(swim_speed=5.0, taxis_form=TaxisForm.CONSTANT, taxis_amplitude=1.0)
    state = solve_basic_state(params)
    error = float(np.max(np.abs(state.n_s - analytic_concentration(5.0, 1.0)(state.z))))
    return SelfTestCase(
        name="basic state, constant taxis, lambda = 5",
        expected="max error <= 1e-8",
        observed=f"{error:.2e}",
        passed=error <= 1e-8,
    )


def diffusion_growth_rate() -> SelfTestCase:
    params = SuspensionParams(swim_speed=0.0, rayleigh_thermal=0.0)
    problem = assemble(solve_basic_state(params), 2.0, 0.0, 0.0)
    expected = -(4 + np.pi**2)
    result = growth_rate(problem, GrowthSeed(sigma=expected + 1), normalization=Normalization.TEMPERATURE)
    return SelfTestCase(
        name="growth rate, pure diffusion, k = 2",
        expected=f"{expected:.6f}",
        observed=f"{result.sigma.real:.6f}",
        passed=_close(result.sigma.real, expected, 1e-5) and abs(result.sigma.imag) <= 1e-6,
    )


def benard_growth_rate() -> SelfTestCase:
    params = SuspensionParams(
        swim_speed=0.0,
        rayleigh_thermal=1707.76,
        top_boundary=BoundaryKind.RIGID,
        bottom_boundary=BoundaryKind.RIGID,
    )
    problem = assemble(solve_basic_state(params), 3.117, 0.0, 1707.76)
    result = growth_rate(problem, GrowthSeed(), stationary=True)
    return SelfTestCase(
        name="growth rate, rigid-rigid at (3.117, 1707.76)",
        expected="|Re(sigma)| <= 1e-3",
        observed=f"{result.sigma.real:.2e}",
        passed=abs(result.sigma.real) <= 1e-3,
    )


CASES: list[Callable[[], SelfTestCase]] = [
    free_free_closed_form,
    lambda: benard_minimum(BenardBoundaries.RIGID_RIGID, 3.117, 1707.76),
    lambda: benard_minimum(BenardBoundaries.RIGID_FREE, 2.682, 1100.65),
    analytic_bottom_value,
    derivative_checks,
    snell_bound,
    constant_taxis_basic_state,
    diffusion_growth_rate,
    benard_growth_rate,
]


def run_selftest() -> list[SelfTestCase]:
    results = []
    for case in CASES:
        try:
            results.append(case())
        except Exception as e:
            logger.error("Self-test case failed to run: %s", e)
            name = getattr(case, "__name__", "case")
            results.append(SelfTestCase(name=name, expected="-", observed=str(e), passed=False))
    return results
