"""Neutral curves Re(sigma) = 0 in the (k, R) plane and their critical points."""

import logging

import numpy as np
from numpy.typing import NDArray
from scipy.optimize import brentq

from config import Settings, get_settings
from exceptions.base import SolverFailure
from exceptions.solver import (
    GrowthRateConvergenceError,
    MinimumNotBracketedError,
    NoSignChangeError,
    SingularJacobianError,
)
from schemas.neutral import BifurcationPoint, CriticalKind, CriticalPoint, NeutralCurve, NeutralPoint
from schemas.params import SuspensionParams, SweptParameter
from schemas.profiles import BasicState
from schemas.stability import BranchKind, GrowthResult, GrowthSeed, Normalization, StabilityProblem

from .basic_state import solve_basic_state
from .spectrum import DENSE_SEED, oracle_seed
from .stability import assemble, classify, growth_rate, mode_number

logger = logging.getLogger(__name__)

DEFAULT_BRACKET = (100.0, 1000.0)
MAX_BRACKET_EXPANSIONS = 30
MAX_POLISH_STEPS = 8
REFINEMENT_DIVISIONS = 5


class NeutralPointSolver:
    """Re(sigma) as a function of the swept Rayleigh number at fixed k.

    Every solve is kept; a new Rayleigh number is warm-started from the closest
    one already solved, and asking again for a solved value returns the stored
    result, so the root finder sees the same signs the bracket search saw.
    """

    def __init__(
        self,
        k: float,
        params: SuspensionParams,
        which: SweptParameter,
        basic: BasicState,
        seed: GrowthResult | GrowthSeed | None = None,
        stationary: bool = False,
        normalization: Normalization = Normalization.VELOCITY,
        settings: Settings | None = None,
    ):
        self.k = k
        self.params = params
        self.which = which
        self.basic = basic
        self.seed = seed
        # an explicit sinusoidal seed picks the branch; the dense spectrum would switch it
        self.reseed = not isinstance(seed, GrowthSeed)
        self.stationary = stationary
        self.normalization = normalization
        self.settings = settings or get_settings()
        self.solved: dict[float, GrowthResult] = {}

    def _start(self, problem: StabilityProblem, rayleigh: float) -> GrowthResult | GrowthSeed:
        if self.solved:
            return self.solved[min(self.solved, key=lambda solved: abs(solved - rayleigh))]
        if self.seed is None:
            # rightmost eigenvalue of the dense spectrum as the first guess
            self.seed = oracle_seed(problem, self.normalization)
        return self.seed

    def _growth_rate(self, problem: StabilityProblem, start: GrowthResult | GrowthSeed) -> GrowthResult:
        return growth_rate(
            problem,
            start,
            stationary=self.stationary,
            normalization=self.normalization,
            settings=self.settings,
        )

    def solve_at(self, rayleigh: float) -> GrowthResult:
        if rayleigh in self.solved:
            return self.solved[rayleigh]

        updated = self.params.with_rayleigh(self.which, rayleigh)
        problem = assemble(self.basic, self.k, updated.rayleigh_bio, updated.rayleigh_thermal)
        start = self._start(problem, rayleigh)
        try:
            result = self._growth_rate(problem, start)
        except (GrowthRateConvergenceError, SingularJacobianError) as e:
            if not self.reseed or (isinstance(start, GrowthResult) and start.message == DENSE_SEED):
                raise
            logger.debug("k=%g R=%g: warm start failed (%s); reseeding from the dense spectrum", self.k, rayleigh, e)
            result = self._growth_rate(problem, oracle_seed(problem, self.normalization))

        self.solved[rayleigh] = result
        return result

    def growth(self, rayleigh: float) -> float:
        return self.solve_at(rayleigh).sigma.real

    def bracket(self, low: float, high: float) -> tuple[float, float]:
        """March from the upper guess one warm-started step at a time until Re(sigma) changes sign.

        Rayleigh numbers are assumed positive: upward steps double, downward steps halve.
        """
        start_low, start_high = low, high
        f_high = self.growth(high)
        if f_high < 0:
            for _ in range(MAX_BRACKET_EXPANSIONS):
                low, high = high, 2 * high if high > 0 else 1.0
                f_high = self.growth(high)
                if f_high >= 0:
                    return low, high
            raise NoSignChangeError(self.k, start_low, high)

        candidate = low if 0 < low < high else 0.5 * high
        for _ in range(MAX_BRACKET_EXPANSIONS):
            if self.growth(candidate) <= 0:
                return candidate, high
            high, candidate = candidate, 0.5 * candidate
        raise NoSignChangeError(self.k, candidate, start_high)

    def solve(self, bracket: tuple[float, float]) -> tuple[float, GrowthResult]:
        low, high = self.bracket(*bracket)
        try:
            root = brentq(self.growth, low, high, xtol=1e-12, rtol=1e-13)
        except ValueError as e:
            raise NoSignChangeError(self.k, low, high) from e
        except RuntimeError as e:
            raise GrowthRateConvergenceError([abs(self.growth(low)), abs(self.growth(high))], str(e)) from e
        result = self.solve_at(root)

        # secant polish on the final eigenfunction
        previous, f_previous = root, result.sigma.real
        current = root * (1 + 1e-7) + 1e-9
        history = [abs(f_previous)]
        for _ in range(MAX_POLISH_STEPS):
            if abs(result.sigma.real) <= self.settings.NEUTRAL_TOL:
                return root, result
            candidate = self.solve_at(current)
            f_current = candidate.sigma.real
            history.append(abs(f_current))
            if abs(f_current) < abs(result.sigma.real):
                root, result = current, candidate
            if f_current == f_previous:
                break
            step = f_current * (current - previous) / (f_current - f_previous)
            previous, f_previous = current, f_current
            current -= step

        if abs(result.sigma.real) <= self.settings.NEUTRAL_TOL:
            return root, result
        raise GrowthRateConvergenceError(history, f"|Re(sigma)| above {self.settings.NEUTRAL_TOL:g} at k={self.k:g}")


def neutral_point(
    k: float,
    params: SuspensionParams,
    which: SweptParameter = SweptParameter.RAYLEIGH_BIO,
    bracket: tuple[float, float] = DEFAULT_BRACKET,
    *,
    basic: BasicState | None = None,
    seed: GrowthResult | GrowthSeed | None = None,
    stationary: bool = False,
    normalization: Normalization = Normalization.VELOCITY,
    settings: Settings | None = None,
) -> tuple[float, GrowthResult]:
    basic = basic or solve_basic_state(params, settings=settings)
    solver = NeutralPointSolver(k, params, which, basic, seed, stationary, normalization, settings)
    return solver.solve(bracket)


class NeutralCurveTracer:
    """Warm-started continuation of neutral points over a wavenumber grid."""

    def __init__(
        self,
        params: SuspensionParams,
        which: SweptParameter = SweptParameter.RAYLEIGH_BIO,
        mode: int = 1,
        stationary: bool = False,
        normalization: Normalization = Normalization.VELOCITY,
        settings: Settings | None = None,
    ):
        self.params = params
        self.which = which
        self.mode = mode
        self.stationary = stationary
        self.normalization = normalization
        self.settings = settings or get_settings()
        self.basic = solve_basic_state(params, settings=self.settings)
        self.results: dict[float, GrowthResult] = {}

    def _bracket_near(self, rayleigh: float | None) -> tuple[float, float]:
        if rayleigh is None:
            return DEFAULT_BRACKET
        spread = 0.2 * abs(rayleigh) + 1.0
        return rayleigh - spread, rayleigh + spread

    def point(self, k: float, seed: GrowthResult | None, near: float | None) -> NeutralPoint:
        start: GrowthResult | GrowthSeed | None = seed
        if start is None and self.mode > 1:
            start = GrowthSeed(mode=self.mode)
        try:
            rayleigh, result = neutral_point(
                k,
                self.params,
                self.which,
                self._bracket_near(near),
                basic=self.basic,
                seed=start,
                stationary=self.stationary,
                normalization=self.normalization,
                settings=self.settings,
            )
            branch = classify(result, self.settings.CLASSIFY_TOL)
            mode = mode_number(result.W, float(np.max(np.abs(result.states))))
        except SolverFailure as e:
            logger.warning("k=%g: neutral point failed: %s", k, e.detail)
            return NeutralPoint(k=k, converged=False, error=e.detail)

        self.results[k] = result
        logger.debug("k=%g R=%.9g Im(sigma)=%.3e %s mode %d", k, rayleigh, result.sigma.imag, branch.value, mode)
        return NeutralPoint(
            k=k,
            rayleigh=rayleigh,
            im_sigma=result.sigma.imag,
            re_sigma=result.sigma.real,
            branch=branch,
            mode=mode,
        )

    def _sweep(self, ks: NDArray[np.float64]) -> list[NeutralPoint]:
        points: list[NeutralPoint] = []
        seed: GrowthResult | None = None
        near: float | None = None
        for k in ks:
            point = self.point(float(k), seed, near)
            points.append(point)
            if point.converged:
                seed, near = self.results[point.k], point.rayleigh
            else:
                seed, near = None, None
        return points

    def _refine(self, points: list[NeutralPoint], k_step: float) -> list[NeutralPoint]:
        valid = [point for point in points if point.converged]
        if len(valid) < 3:
            return points
        index = int(np.argmin([point.rayleigh for point in valid]))
        if index in (0, len(valid) - 1):
            return points

        centre = valid[index]
        extra: list[NeutralPoint] = []
        fine_step = k_step / REFINEMENT_DIVISIONS
        for direction in (-1, 1):
            seed, near = self.results[centre.k], centre.rayleigh
            for j in range(1, REFINEMENT_DIVISIONS):
                point = self.point(centre.k + direction * j * fine_step, seed, near)
                extra.append(point)
                if point.converged:
                    seed, near = self.results[point.k], point.rayleigh
        return sorted(points + extra, key=lambda point: point.k)

    def trace(self, k_range: tuple[float, float], k_step: float, refine: bool = True) -> NeutralCurve:
        if not k_step > 0 or not 0 < k_range[0] <= k_range[1]:
            raise ValueError(f"invalid wavenumber grid {k_range} with step {k_step}")

        ks = np.arange(k_range[0], k_range[1] + 0.5 * k_step, k_step)
        points = self._sweep(ks)
        if refine:
            points = self._refine(points, k_step)

        curve = NeutralCurve(
            params=self.params,
            swept=self.which,
            fixed_value=self.params.rayleigh(_other(self.which)),
            k_step=k_step,
            points=points,
        )
        logger.info(
            "Neutral curve theta_i=%g: %d points, %d gaps",
            self.params.incidence_angle_deg,
            len(curve.valid_points),
            len(curve.gaps),
        )
        return curve


def _other(which: SweptParameter) -> SweptParameter:
    if which is SweptParameter.RAYLEIGH_BIO:
        return SweptParameter.RAYLEIGH_THERMAL
    return SweptParameter.RAYLEIGH_BIO


def trace(
    params: SuspensionParams,
    k_range: tuple[float, float] = (0.5, 10.0),
    k_step: float = 0.1,
    which: SweptParameter = SweptParameter.RAYLEIGH_BIO,
    *,
    mode: int = 1,
    stationary: bool = False,
    refine: bool = True,
    normalization: Normalization = Normalization.VELOCITY,
    settings: Settings | None = None,
) -> NeutralCurve:
    tracer = NeutralCurveTracer(params, which, mode, stationary, normalization, settings)
    return tracer.trace(k_range, k_step, refine)


def critical_point(curve: NeutralCurve) -> CriticalPoint:
    """Minimum of the curve, refined by a parabola through the discrete minimizer and its neighbours."""
    valid = sorted(curve.valid_points, key=lambda point: point.k)
    if len(valid) < 3:
        raise MinimumNotBracketedError()

    rayleighs = np.array([point.rayleigh for point in valid])
    # argmin returns the first occurrence: ties go to the smaller k
    index = int(np.argmin(rayleighs))
    if index in (0, len(valid) - 1):
        raise MinimumNotBracketedError()

    ks = np.array([point.k for point in valid[index - 1 : index + 2]])
    a, b, c = np.polyfit(ks, rayleighs[index - 1 : index + 2], 2)
    k_c, rayleigh_c = valid[index].k, valid[index].rayleigh
    if a > 0:
        vertex = float(np.clip(-b / (2 * a), ks[0], ks[-1]))
        k_c, rayleigh_c = vertex, float(min(np.polyval([a, b, c], vertex), rayleigh_c))

    minimum = valid[index]
    kind = CriticalKind.OVERSTABLE if minimum.branch is BranchKind.OSCILLATORY else CriticalKind.STATIONARY
    return CriticalPoint(
        k_c=k_c,
        rayleigh_c=rayleigh_c,
        lambda_c=2 * np.pi / k_c,
        branch_kind=kind,
        mode=minimum.mode or 1,
    )


def oscillatory_bifurcation(curve: NeutralCurve) -> BifurcationPoint | None:
    """First oscillatory-to-stationary transition scanning k upward."""
    labelled = sorted((point for point in curve.valid_points if point.branch is not None), key=lambda point: point.k)
    for lower, upper in zip(labelled, labelled[1:]):
        if lower.branch is BranchKind.OSCILLATORY and upper.branch is BranchKind.STATIONARY:
            return BifurcationPoint(k_b=upper.k, k_lower=lower.k, bracketed=True)
    return None
