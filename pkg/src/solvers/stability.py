"""Linear stability of the basic state to normal modes exp(sigma t + i(k_x x + k_y y)).

The perturbation system is solved in the integrated-concentration form
(Phi = integral of Theta from z to the top, Theta = -D Phi) as a ninth-order
first-order system with the growth rate as an unknown parameter. The
collocation solver performs the Newton–Kantorovich linearization itself;
the extra condition fixing sigma is the normalization of the eigenfunction.

State vector order: W, DW, D2W, D3W, Phi, DPhi, D2Phi, T, DT.
"""

import logging
from typing import Any

import numpy as np
from numpy.typing import NDArray
from scipy.integrate import solve_bvp
from scipy.interpolate import CubicSpline

from config import Settings, get_settings
from exceptions.solver import (
    DegenerateEigenfunctionError,
    GrowthRateConvergenceError,
    SingularJacobianError,
    UnconvergedResultError,
)
from physics.optics import basic_intensity, perturbed_intensity_coefficient, slant
from physics.phototaxis import TaxisFunction, taxis_curvature, taxis_derivative, taxis_for, taxis_value
from schemas.params import BoundaryKind
from schemas.profiles import BasicState
from schemas.stability import BranchKind, GrowthResult, GrowthSeed, Normalization, StabilityProblem

logger = logging.getLogger(__name__)

STATE_SIZE = 9
W, DW, D2W, D3W, PHI, DPHI, D2PHI, T, DT = range(STATE_SIZE)
COEFFICIENT_REFINEMENT = 4
VANISHING_FLOW = 1e-10


def coefficient_profiles(
    basic: BasicState,
    z: NDArray[np.float64],
    varpi: NDArray[np.float64],
    n: NDArray[np.float64],
) -> NDArray[np.float64]:
    """Rows aleph0, aleph1, aleph2, dn_s/dz, q for given (varpi, n_s) samples at heights z.

    q = V_c n_s c dM/dG with c = (tau_H / cos theta_0) G_s the multiplier of the
    nonlocal intensity perturbation G_1 = -c Phi; aleph1 = 2 q and aleph0 = -Dq.
    """
    params = basic.params
    taxis: TaxisFunction = basic.taxis or taxis_for(params)
    s = slant(basic.geometry, params.optical_depth)
    V = params.swim_speed

    intensity = basic_intensity(z, varpi, basic.geometry, params.optical_depth, params.irradiation_magnitude)
    c = perturbed_intensity_coefficient(intensity, basic.geometry, params.optical_depth)
    G = intensity.values
    M = taxis_value(taxis, G)
    dM = taxis_derivative(taxis, G)
    d2M = taxis_curvature(taxis, G)

    dn = V * M * n
    dG = c * n
    q = V * n * c * dM
    dq = V * (dn * c * dM + n * s * dG * dM + n * c * d2M * dG)
    return np.vstack([-dq, 2.0 * q, V * M, dn, q])


def assemble(
    basic: BasicState,
    k: float,
    rayleigh_bio: float,
    rayleigh_thermal: float,
    top: BoundaryKind | None = None,
    bottom: BoundaryKind | None = None,
) -> StabilityProblem:
    if not k > 0:
        raise ValueError(f"wavenumber must be positive (got {k:g})")

    z = basic.z
    fine = np.linspace(0.0, 1.0, COEFFICIENT_REFINEMENT * (z.size - 1) + 1)
    varpi_fine, n_fine = basic.solution(fine)
    interpolant = CubicSpline(fine, coefficient_profiles(basic, fine, varpi_fine, n_fine), axis=1)
    on_mesh = coefficient_profiles(basic, z, basic.varpi, basic.n_s)

    if not np.all(np.isfinite(on_mesh)):
        raise ValueError("coefficient profiles contain non-finite values")

    return StabilityProblem(
        basic=basic,
        wavenumber=k,
        rayleigh_bio=rayleigh_bio,
        rayleigh_thermal=rayleigh_thermal,
        top=top or basic.params.top_boundary,
        bottom=bottom or basic.params.bottom_boundary,
        aleph0=on_mesh[0],
        aleph1=on_mesh[1],
        aleph2=on_mesh[2],
        concentration_gradient=on_mesh[3],
        interpolant=interpolant,
    )


def _flux_coefficient(problem: StabilityProblem, z: float) -> tuple[float, float]:
    """(aleph2, q) at a wall."""
    values = problem.interpolant(np.array([z]))
    return float(values[2, 0]), float(values[4, 0])


def normalization_index(problem: StabilityProblem, normalization: Normalization) -> int:
    if normalization is Normalization.TEMPERATURE:
        return DT
    return D2W if problem.bottom is BoundaryKind.RIGID else DW


def _harmonic(c: float, z: NDArray[np.float64], order: int, phase: float) -> NDArray[np.float64]:
    """order-th derivative of sin(c z + phase)."""
    return c**order * np.sin(c * z + phase + order * np.pi / 2)


def seed_states(
    problem: StabilityProblem,
    z: NDArray[np.float64],
    mode: int = 1,
    normalization: Normalization = Normalization.VELOCITY,
) -> NDArray[np.float64]:
    """Sinusoidal starting eigenfunctions with `mode` cells stacked vertically.

    W = sin(pi z) sin(n pi z) (rigid bottom) or sin(n pi z) (free bottom),
    T = sin(n pi z) / (pi^2 + k^2), Phi = (1 - z) sin(n pi z) / (pi^2 + k^2).
    The vector is scaled so the normalization functional equals 1.
    """
    k2 = problem.wavenumber**2
    c = mode * np.pi
    states = np.zeros((STATE_SIZE, z.size))

    if problem.bottom is BoundaryKind.RIGID:
        # sin(a z) sin(b z) = (cos((b - a) z) - cos((b + a) z)) / 2
        for order in range(4):
            states[W + order] = 0.5 * (
                _harmonic(c - np.pi, z, order, np.pi / 2) - _harmonic(c + np.pi, z, order, np.pi / 2)
            )
    else:
        for order in range(4):
            states[W + order] = _harmonic(c, z, order, 0.0)

    scale = 1.0 / (np.pi**2 + k2)
    states[T] = scale * _harmonic(c, z, 0, 0.0)
    states[DT] = scale * _harmonic(c, z, 1, 0.0)

    g0, g1, g2 = (_harmonic(c, z, order, 0.0) for order in range(3))
    states[PHI] = scale * (1 - z) * g0
    states[DPHI] = scale * (-g0 + (1 - z) * g1)
    states[D2PHI] = scale * (-2 * g1 + (1 - z) * g2)

    anchor = states[normalization_index(problem, normalization), 0]
    return states / anchor


class GrowthRateSolver:
    def __init__(
        self,
        problem: StabilityProblem,
        stationary: bool = False,
        normalization: Normalization = Normalization.VELOCITY,
        settings: Settings | None = None,
    ):
        self.problem = problem
        self.stationary = stationary
        self.normalization = normalization
        self.settings = settings or get_settings()
        self.dtype: type = float if stationary else complex

        params = problem.basic.params
        self.k2 = problem.wavenumber**2
        self.prandtl = params.prandtl
        self.lewis = params.lewis
        self.aleph2_bottom, self.q_bottom = _flux_coefficient(problem, 0.0)
        self.aleph2_top, _ = _flux_coefficient(problem, 1.0)
        self.anchor = normalization_index(problem, normalization)

    def _system(self, z: NDArray[np.float64], sigma: complex) -> NDArray[Any]:
        aleph0, aleph1, aleph2, dn, _ = self.problem.interpolant(z)
        k2, Pr = self.k2, self.prandtl
        A = np.zeros((STATE_SIZE, STATE_SIZE, z.size), dtype=self.dtype)
        A[W, DW] = A[DW, D2W] = A[D2W, D3W] = 1
        A[D3W, W] = -k2 * (k2 + sigma / Pr)
        A[D3W, D2W] = 2 * k2 + sigma / Pr
        A[D3W, DPHI] = self.problem.rayleigh_bio * k2
        A[D3W, T] = self.problem.rayleigh_thermal * k2
        A[PHI, DPHI] = A[DPHI, D2PHI] = 1
        A[D2PHI, PHI] = -aleph0
        A[D2PHI, DPHI] = sigma * self.lewis + k2 + aleph1
        A[D2PHI, D2PHI] = aleph2
        A[D2PHI, W] = -self.lewis * dn
        A[T, DT] = 1
        A[DT, T] = k2 + sigma
        A[DT, W] = -1
        return A

    def _sigma_derivative(self, y: NDArray[Any]) -> NDArray[Any]:
        df_dp = np.zeros((STATE_SIZE, 1, y.shape[1]), dtype=self.dtype)
        df_dp[D3W, 0] = (-self.k2 * y[W] + y[D2W]) / self.prandtl
        df_dp[D2PHI, 0] = self.lewis * y[DPHI]
        df_dp[DT, 0] = y[T]
        return df_dp

    def fun(self, z: NDArray[np.float64], y: NDArray[Any], p: NDArray[Any]) -> NDArray[Any]:
        return np.einsum("ijm,jm->im", self._system(z, p[0]), y)

    def fun_jac(self, z: NDArray[np.float64], y: NDArray[Any], p: NDArray[Any]) -> tuple[NDArray[Any], NDArray[Any]]:
        return self._system(z, p[0]), self._sigma_derivative(y)

    def _wall_rows(self) -> tuple[int, int]:
        bottom = DW if self.problem.bottom is BoundaryKind.RIGID else D2W
        top = DW if self.problem.top is BoundaryKind.RIGID else D2W
        return bottom, top

    def bc(self, ya: NDArray[Any], yb: NDArray[Any], p: NDArray[Any]) -> NDArray[Any]:
        bottom, top = self._wall_rows()
        return np.array(
            [
                ya[W],
                ya[bottom],
                ya[D2PHI] - self.aleph2_bottom * ya[DPHI] - self.q_bottom * ya[PHI],
                ya[T],
                yb[W],
                yb[top],
                yb[PHI],
                yb[D2PHI] - self.aleph2_top * yb[DPHI],
                yb[T],
                ya[self.anchor] - 1,
            ],
        )

    def bc_jac(
        self,
        ya: NDArray[Any],
        yb: NDArray[Any],
        p: NDArray[Any],
    ) -> tuple[NDArray[Any], NDArray[Any], NDArray[Any]]:
        bottom, top = self._wall_rows()
        dya = np.zeros((STATE_SIZE + 1, STATE_SIZE), dtype=self.dtype)
        dyb = np.zeros((STATE_SIZE + 1, STATE_SIZE), dtype=self.dtype)
        dya[0, W] = dya[1, bottom] = dya[3, T] = dya[9, self.anchor] = 1
        dya[2, D2PHI], dya[2, DPHI], dya[2, PHI] = 1, -self.aleph2_bottom, -self.q_bottom
        dyb[4, W] = dyb[5, top] = dyb[6, PHI] = dyb[8, T] = 1
        dyb[7, D2PHI], dyb[7, DPHI] = 1, -self.aleph2_top
        return dya, dyb, np.zeros((STATE_SIZE + 1, 1), dtype=self.dtype)

    def _initial_guess(self, guess: GrowthResult | GrowthSeed) -> tuple[NDArray[np.float64], NDArray[Any], complex]:
        if isinstance(guess, GrowthResult):
            return guess.z, guess.states, guess.sigma
        z = self.problem.z
        return z, seed_states(self.problem, z, guess.mode, self.normalization), guess.sigma

    def _cast(self, y: NDArray[Any], sigma: complex) -> tuple[NDArray[Any], NDArray[Any]]:
        if self.stationary:
            return np.real(y).astype(float), np.array([sigma.real])
        return np.asarray(y, dtype=complex), np.array([sigma], dtype=complex)

    def solve(self, guess: GrowthResult | GrowthSeed) -> GrowthResult:
        z, y, sigma = self._initial_guess(guess)
        y, p = self._cast(y, complex(sigma))
        history: list[float] = []
        iterations = 0

        for attempt in range(1, self.settings.NEWTON_MAX_ATTEMPTS + 1):
            result = solve_bvp(
                self.fun,
                self.bc,
                z,
                y,
                p=p,
                fun_jac=self.fun_jac,
                bc_jac=self.bc_jac,
                tol=self.settings.BVP_TOL,
                bc_tol=self.settings.BVP_BC_TOL,
                max_nodes=self.settings.BVP_MAX_NODES,
            )
            iterations += int(result.niter)
            residual = float(np.max(result.rms_residuals)) if result.rms_residuals is not None else np.inf
            history.append(residual)
            logger.debug(
                "k=%g attempt %d: status=%d sigma=%s residual=%.3e",
                self.problem.wavenumber,
                attempt,
                result.status,
                result.p,
                residual,
            )

            if result.status == 0:
                return self._result(result, iterations, residual)
            if result.status == 2:
                raise SingularJacobianError(self.problem.wavenumber)
            # restart on the problem mesh; the refined one only grows between attempts
            z = self.problem.z
            y, p = self._cast(result.sol(z), complex(result.p[0]))

        raise GrowthRateConvergenceError(history, result.message)

    def collocation_residual(self, x: NDArray[np.float64], y: NDArray[Any], p: NDArray[Any]) -> float:
        """Largest defect of the discretized equations on mesh x, relative to 1 + |f| at interval midpoints."""
        h = np.diff(x)
        f = self.fun(x, y, p)
        y_middle = 0.5 * (y[:, 1:] + y[:, :-1]) - 0.125 * h * (f[:, 1:] - f[:, :-1])
        f_middle = self.fun(x[:-1] + 0.5 * h, y_middle, p)
        defect = y[:, 1:] - y[:, :-1] - h / 6 * (f[:, :-1] + f[:, 1:] + 4 * f_middle)
        return float(np.max(np.abs(defect) / (1 + np.abs(f_middle))))

    def _result(self, result: Any, iterations: int, residual: float) -> GrowthResult:
        z = self.problem.z
        states = np.asarray(result.sol(z), dtype=complex)
        sigma = complex(result.p[0])
        return GrowthResult(
            sigma=sigma,
            z=z,
            states=states,
            converged=True,
            iterations=iterations,
            residual=residual,
            equation_residual=self.collocation_residual(result.x, result.y, result.p),
            mesh_nodes=int(result.x.size),
            normalization=self.normalization,
            message=result.message,
        )


def growth_rate(
    problem: StabilityProblem,
    guess: GrowthResult | GrowthSeed | None = None,
    *,
    stationary: bool = False,
    normalization: Normalization = Normalization.VELOCITY,
    settings: Settings | None = None,
) -> GrowthResult:
    solver = GrowthRateSolver(problem, stationary, normalization, settings)
    return solver.solve(guess if guess is not None else GrowthSeed())


def boundary_residual(problem: StabilityProblem, result: GrowthResult) -> float:
    """Largest violation of the wall conditions by a converged eigenfunction."""
    solver = GrowthRateSolver(problem, normalization=result.normalization)
    residuals = solver.bc(result.states[:, 0], result.states[:, -1], np.array([result.sigma]))
    return float(np.max(np.abs(residuals)))


def classify(result: GrowthResult, tol: float | None = None) -> BranchKind:
    if not result.converged:
        raise UnconvergedResultError()
    tol = get_settings().CLASSIFY_TOL if tol is None else tol
    return BranchKind.STATIONARY if abs(result.sigma.imag) <= tol else BranchKind.OSCILLATORY



def mode_number(W: NDArray[np.complex128], scale: float = 1.0) -> int:
    """Convection cells stacked vertically: sign changes of Re(W) inside (0, 1) plus one.

    W counts as vanishing when its peak is below VANISHING_FLOW * scale; pass the
    largest state component as scale when W is not the normalized field.
    """
    W = np.asarray(W, dtype=complex)
    peak = int(np.argmax(np.abs(W)))
    if np.abs(W[peak]) <= VANISHING_FLOW * scale:
        raise DegenerateEigenfunctionError()

    real = (W * np.conj(W[peak]) / np.abs(W[peak])).real
    if real[np.argmax(np.abs(real))] < 0:
        real = -real

    interior = real[1:-1]
    significant = interior[np.abs(interior) > 1e-8 * np.max(np.abs(real))]
    return int(np.count_nonzero(np.diff(np.sign(significant)))) + 1
