from collections.abc import Sequence

from .base import SolverFailure


class ShootingConvergenceError(SolverFailure):
    def __init__(self, last_residual: float, iterations: int):
        self.last_residual = last_residual
        self.iterations = iterations
        super().__init__(
            f"Basic-state shooting did not converge after {iterations} iterations "
            f"(last residual {last_residual:.3e})",
        )


class GrowthRateConvergenceError(SolverFailure):
    def __init__(self, residual_history: Sequence[float], message: str):
        self.residual_history = list(residual_history)
        super().__init__(f"Growth-rate iterations did not converge: {message}")


class SingularJacobianError(SolverFailure):
    def __init__(self, k: float) -> None:
        self.k = k
        super().__init__(f"Singular Jacobian at k={k:g}; try a different seed or wavenumber")


class NoSignChangeError(SolverFailure):
    def __init__(self, k: float, low: float, high: float):
        self.k = k
        super().__init__(f"No sign change of Re(sigma) at k={k:g} for R in [{low:g}, {high:g}]")


class MinimumNotBracketedError(SolverFailure):
    def __init__(self) -> None:
        super().__init__("Minimum not bracketed; widen k range")


class DegenerateEigenfunctionError(SolverFailure):
    def __init__(self) -> None:
        super().__init__("Eigenfunction W vanishes identically; mode number is undefined")


class UnconvergedResultError(SolverFailure):
    def __init__(self) -> None:
        super().__init__("Cannot classify an unconverged growth-rate result")
