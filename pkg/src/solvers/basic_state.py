"""Equilibrium profiles of the suspension.

With varpi(z) = -(integral of n_s from z to 1), so varpi(0) = -1, varpi(1) = 0
and n_s = d varpi/dz, cell conservation reduces to

    varpi'' - V_c M(G_s(varpi)) varpi' = 0,   G_s = I_t exp(tau_H varpi / cos theta_0).

This is the antiderivative of dn_s/dz = V_c M_s n_s. It is integrated
downward from z = 1 with the unknown top concentration s = n_s(1), and
Newton iterations in log s on varpi(0) + 1 fix s. The variational equations
are carried along, so the Newton derivative is exact.

The Newton start comes from the same problem with varpi as the independent
variable: dn/dvarpi = V_c M(G(varpi)) and dz/dvarpi = 1/n. There z(-1) is
monotone in s, so a bracketing root finder on it cannot diverge even when
n_s spans several orders of magnitude.
"""

import logging
from typing import Any

import numpy as np
from numpy.typing import NDArray
from scipy.integrate import solve_ivp
from scipy.optimize import brentq, root_scalar

from config import Settings, get_settings
from exceptions.solver import ShootingConvergenceError
from physics.optics import basic_intensity, geometry_for, intensity_from_varpi, slant
from physics.phototaxis import TaxisFunction, taxis_derivative, taxis_for, taxis_value
from schemas.params import SuspensionParams
from schemas.profiles import BasicState, Profile, Sublayer

logger = logging.getLogger(__name__)

GAUSS_NODES, GAUSS_WEIGHTS = np.polynomial.legendre.leggauss(8)
MAX_BRACKET_STEPS = 100


def _height_overshoot(_: float, y: NDArray[np.float64], *__: Any) -> float:
    return float(y[1] + 1.0)


_height_overshoot.terminal = True  # type: ignore[attr-defined]


def mesh(points: int) -> Profile:
    return np.linspace(0.0, 1.0, points)


def temperature_profile(params: SuspensionParams) -> Profile:
    """Conduction profile T_s = 1 - z (heated bottom, cooled top)."""
    return 1.0 - mesh(params.mesh_points)


def uniform_solution(z: NDArray[np.float64]) -> NDArray[np.float64]:
    z = np.asarray(z, dtype=float)
    return np.vstack([z - 1.0, np.ones_like(z)])


class BasicStateSolver:
    def __init__(
        self,
        params: SuspensionParams,
        taxis: TaxisFunction | None = None,
        settings: Settings | None = None,
    ):
        self.params = params
        self.taxis = taxis or taxis_for(params)
        self.settings = settings or get_settings()
        self.geometry = geometry_for(params)
        self.slant = slant(self.geometry, params.optical_depth)
        self.z = mesh(params.mesh_points)
        self.last_residual = np.inf
        self.best: tuple[float, float] = (np.inf, np.nan)
        self.evaluations = 0

    def _rhs(self, _: float, y: NDArray[np.float64]) -> NDArray[np.float64]:
        varpi, n, dvarpi_ds, dn_ds = y
        G = intensity_from_varpi(varpi, self.geometry, self.params.optical_depth, self.params.irradiation_magnitude)
        M = self.taxis.value(G)
        dM = self.taxis.derivative(G)
        V = self.params.swim_speed
        return np.array(
            [
                n,
                V * M * n,
                dn_ds,
                V * (dM * self.slant * G * dvarpi_ds * n + M * dn_ds),
            ],
        )

    def _shoot(self, top_concentration: float, dense_output: bool = False) -> Any:
        solution = solve_ivp(
            self._rhs,
            (1.0, 0.0),
            [0.0, top_concentration, 0.0, 1.0],
            method="DOP853",
            t_eval=self.z[::-1],
            dense_output=dense_output,
            rtol=self.settings.SHOOTING_RTOL,
            atol=self.settings.SHOOTING_ATOL,
        )
        if solution.status != 0:
            raise ShootingConvergenceError(self.last_residual, 0)
        return solution

    def _residual(self, top_concentration: float) -> tuple[float, float]:
        solution = self._shoot(top_concentration)
        residual = float(solution.y[0, -1] + 1.0)
        self.last_residual = residual
        self.evaluations += 1
        if abs(residual) < self.best[0]:
            self.best = (abs(residual), top_concentration)
        logger.debug("shooting s=%.12g residual=%.3e", top_concentration, residual)
        return residual, float(solution.y[2, -1])

    def _log_residual(self, log_concentration: float) -> tuple[float, float]:
        top_concentration = float(np.exp(log_concentration))
        residual, slope = self._residual(top_concentration)
        return residual, top_concentration * slope

    def _bottom_height(self, log_concentration: float) -> float:
        """z reached at varpi = -1 when integrating in varpi from the top with n_s(1) = exp(log_concentration)."""
        top_concentration = float(np.exp(log_concentration))
        V = self.params.swim_speed

        def rhs(varpi: float, y: NDArray[np.float64]) -> NDArray[np.float64]:
            G = intensity_from_varpi(varpi, self.geometry, self.params.optical_depth, self.params.irradiation_magnitude)
            n = top_concentration + V * y[0]
            return np.array([self.taxis.value(G), 1.0 / n if n > 0 else np.inf])

        solution = solve_ivp(
            rhs,
            (0.0, -1.0),
            [0.0, 1.0],
            method="DOP853",
            events=_height_overshoot,
            rtol=self.settings.SHOOTING_RTOL,
            atol=self.settings.SHOOTING_ATOL,
        )
        if solution.status != 0:
            return -1.0
        return float(solution.y[1, -1])

    def _estimate_top_concentration(self) -> float:
        # the bottom height rises monotonically with the top concentration
        low = high = 0.0
        if self._bottom_height(high) > 0:
            for _ in range(MAX_BRACKET_STEPS):
                low -= 1.0
                if self._bottom_height(low) <= 0:
                    break
            else:
                raise ShootingConvergenceError(self.last_residual, MAX_BRACKET_STEPS)
        else:
            for _ in range(MAX_BRACKET_STEPS):
                high += 1.0
                if self._bottom_height(high) > 0:
                    break
            else:
                raise ShootingConvergenceError(self.last_residual, MAX_BRACKET_STEPS)
            low = high - 1.0

        high = low + 1.0
        root = brentq(
            self._bottom_height,
            low,
            high,
            xtol=1e-14,
            rtol=1e-14,
            maxiter=self.settings.SHOOTING_MAX_ITER * 4,
        )
        return float(np.exp(root))

    def _find_top_concentration(self) -> tuple[float, float, int]:
        tolerance = self.settings.SHOOTING_RESIDUAL_TOL
        self.best = (np.inf, np.nan)
        self.evaluations = 0
        estimate = self._estimate_top_concentration()
        try:
            root_scalar(
                self._log_residual,
                x0=np.log(estimate),
                fprime=True,
                method="newton",
                xtol=1e-14,
                rtol=1e-14,
                maxiter=self.settings.SHOOTING_MAX_ITER,
            )
        except (RuntimeError, ShootingConvergenceError, FloatingPointError, OverflowError) as e:
            logger.debug("Newton shooting stopped early (%s)", e)

        residual, top_concentration = self.best
        if residual <= tolerance:
            return top_concentration, residual, self.evaluations
        if residual <= self.settings.SHOOTING_ACCEPT_TOL:
            logger.warning(
                "Shooting residual %.2e above %.0e at theta_i=%g; keeping the best iterate n_s(1)=%.12g",
                residual,
                tolerance,
                self.params.incidence_angle_deg,
                top_concentration,
            )
            return top_concentration, residual, self.evaluations
        raise ShootingConvergenceError(residual, self.evaluations)

    def _assemble(
        self,
        varpi: Profile,
        n_s: Profile,
        top_concentration: float,
        residual: float,
        iterations: int,
        solution: Any,
    ) -> BasicState:
        intensity = basic_intensity(
            self.z,
            varpi,
            self.geometry,
            self.params.optical_depth,
            self.params.irradiation_magnitude,
        )
        return BasicState(
            params=self.params,
            geometry=self.geometry,
            z=self.z,
            varpi=varpi,
            n_s=n_s,
            T_s=temperature_profile(self.params),
            G_s=intensity.values,
            M_s=taxis_value(self.taxis, intensity.values),
            dMdG=taxis_derivative(self.taxis, intensity.values),
            top_concentration=top_concentration,
            shooting_residual=residual,
            iterations=iterations,
            solution=solution,
            taxis=self.taxis,
        )

    def solve(self) -> BasicState:
        if self.params.swim_speed == 0:
            logger.info("V_c = 0: uniform suspension, shooting skipped")
            varpi, n_s = uniform_solution(self.z)
            return self._assemble(varpi, n_s, 1.0, 0.0, 0, uniform_solution)

        logger.warning(
            "Cell conservation integrated as varpi'' = V_c M_s(G_s) varpi'; "
            "the antiderivative form with T_s in place of M_s is not used",
        )
        top_concentration, _, iterations = self._find_top_concentration()
        solution = self._shoot(top_concentration, dense_output=True)
        varpi = solution.y[0, ::-1].copy()
        n_s = solution.y[1, ::-1].copy()
        residual = float(varpi[0] + 1.0)
        varpi[-1] = 0.0

        logger.info(
            "Basic state solved: theta_i=%g n_s(1)=%.6g residual=%.2e after %d iterations",
            self.params.incidence_angle_deg,
            top_concentration,
            residual,
            iterations,
        )
        return self._assemble(varpi, n_s, top_concentration, residual, iterations, _DenseProfiles(solution.sol))


class _DenseProfiles:
    """(varpi, n_s) at arbitrary heights from the integrator's continuous extension."""

    def __init__(self, sol: Any):
        self.sol = sol

    def __call__(self, z: NDArray[np.float64]) -> NDArray[np.float64]:
        return np.asarray(self.sol(np.asarray(z, dtype=float)))[:2]


def solve_basic_state(
    params: SuspensionParams,
    taxis: TaxisFunction | None = None,
    settings: Settings | None = None,
) -> BasicState:
    return BasicStateSolver(params, taxis, settings).solve()


def _cell_quadrature(state: BasicState) -> tuple[NDArray[np.float64], NDArray[np.float64], NDArray[np.float64]]:
    """Gauss–Legendre nodes/weights on every mesh cell, and the dense profiles there."""
    left, right = state.z[:-1], state.z[1:]
    half = 0.5 * (right - left)
    nodes = (0.5 * (left + right))[:, None] + half[:, None] * GAUSS_NODES[None, :]
    weights = half[:, None] * GAUSS_WEIGHTS[None, :]
    profiles = state.solution(nodes.ravel()).reshape(2, *nodes.shape)
    return nodes, weights, profiles


def conservation_error(state: BasicState) -> float:
    """|integral of n_s over the layer - 1|."""
    _, weights, profiles = _cell_quadrature(state)
    return abs(float(np.sum(weights * profiles[1])) - 1.0)


def ode_residual(state: BasicState) -> float:
    """Max-norm residual of the integrated form of the basic-state equations over mesh cells."""
    params = state.params
    _, weights, profiles = _cell_quadrature(state)
    varpi, n = profiles
    G = intensity_from_varpi(varpi, state.geometry, params.optical_depth, params.irradiation_magnitude)
    M = state.taxis.value(G)
    growth = np.sum(weights * params.swim_speed * M * n, axis=1)
    rise = np.sum(weights * n, axis=1)
    varpi_residual = np.diff(state.varpi) - rise
    n_residual = np.diff(state.n_s) - growth
    boundary = max(abs(state.varpi[0] + 1.0), abs(state.varpi[-1]))
    return float(max(np.max(np.abs(varpi_residual)), np.max(np.abs(n_residual)), boundary))


def sublayer_position(state: BasicState) -> Sublayer:
    """Height of the concentration maximum, refined by a parabola through the discrete peak."""
    n_s, z = state.n_s, state.z
    peak = float(np.max(n_s))
    if peak - float(np.min(n_s)) <= 1e-12 * max(abs(peak), 1.0):
        return Sublayer(position=float(z[-1]), peak_concentration=peak, uniform=True)

    index = int(np.flatnonzero(n_s == peak)[-1])
    if index in (0, len(z) - 1):
        return Sublayer(position=float(z[index]), peak_concentration=peak, uniform=False)

    below, centre, above = n_s[index - 1 : index + 2]
    curvature = below - 2 * centre + above
    if curvature >= 0:
        return Sublayer(position=float(z[index]), peak_concentration=peak, uniform=False)
    shift = 0.5 * (below - above) / curvature
    h = z[1] - z[0]
    return Sublayer(
        position=float(z[index] + shift * h),
        peak_concentration=float(centre - 0.25 * (below - above) * shift),
        uniform=False,
    )
