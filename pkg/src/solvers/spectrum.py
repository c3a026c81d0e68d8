"""Dense generalized eigenvalue problem A x = sigma B x for the same perturbations.

Independent of the integrated-concentration form used by the growth-rate
solver: the unknowns are pressure P, horizontal velocity U (scaled by -i so
the operator stays real), vertical velocity W, temperature T and
concentration Theta on a uniform grid. The intensity perturbation enters
through Phi = J Theta with J the trapezoidal integral from z to the top.
Second-order central differences; boundary rows are replaced by wall
conditions with zero rows in B, which produces infinite eigenvalues that are
discarded.
"""

import logging

import numpy as np
from numpy.typing import NDArray
from scipy import linalg

from exceptions.solver import DegenerateEigenfunctionError
from schemas.params import BoundaryKind
from schemas.stability import GrowthResult, Normalization, StabilityProblem

from .stability import mode_number, seed_states

logger = logging.getLogger(__name__)

FIELDS = ("P", "U", "W", "T", "Theta")
INFINITE_EIGENVALUE = 1e10
DENSE_SEED = "dense spectrum seed"


def difference_operators(points: int) -> tuple[NDArray[np.float64], NDArray[np.float64], NDArray[np.float64], float]:
    """First and second derivative matrices, trapezoidal J, and the spacing, on a uniform grid over [0, 1]."""
    h = 1.0 / (points - 1)

    D1 = (np.eye(points, k=1) - np.eye(points, k=-1)) / (2 * h)
    D1[0, :3] = np.array([-3.0, 4.0, -1.0]) / (2 * h)
    D1[-1, -3:] = np.array([1.0, -4.0, 3.0]) / (2 * h)

    D2 = (np.eye(points, k=1) - 2 * np.eye(points) + np.eye(points, k=-1)) / h**2
    D2[0, :4] = np.array([2.0, -5.0, 4.0, -1.0]) / h**2
    D2[-1, -4:] = np.array([-1.0, 4.0, -5.0, 2.0]) / h**2

    J = h * np.triu(np.ones((points, points)))
    J[:, -1] = h / 2
    np.fill_diagonal(J, h / 2)
    J[-1] = 0.0
    return D1, D2, J, h


class DenseSpectrum:
    def __init__(self, problem: StabilityProblem, points: int | None = None):
        self.problem = problem
        self.points = points or problem.z.size
        self.z = np.linspace(0.0, 1.0, self.points)

    def _block(self, name: str) -> slice:
        i = FIELDS.index(name)
        return slice(i * self.points, (i + 1) * self.points)

    def matrices(self) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
        problem = self.problem
        params = problem.basic.params
        N = self.points
        k = problem.wavenumber
        k2 = k**2
        Pr, Le = params.prandtl, params.lewis
        aleph0, aleph1, aleph2, dn, q = problem.interpolant(self.z)

        D1, D2, J, _ = difference_operators(N)
        I = np.eye(N)
        L = D2 - k2 * I

        A = np.zeros((5 * N, 5 * N))
        B = np.zeros((5 * N, 5 * N))
        p, u, w, t, c = (self._block(name) for name in FIELDS)

        # horizontal momentum
        A[u, u] = L
        A[u, p] = -k * I
        B[u, u] = I / Pr
        # vertical momentum
        A[w, w] = L
        A[w, p] = -D1
        A[w, t] = problem.rayleigh_thermal * I
        A[w, c] = -problem.rayleigh_bio * I
        B[w, w] = I / Pr
        # continuity, imposed at every node
        A[p, u] = -k * I
        A[p, w] = D1
        # temperature
        A[t, t] = L
        A[t, w] = I
        B[t, t] = I
        # concentration
        A[c, c] = L - np.diag(aleph1) - np.diag(aleph2) @ D1 - np.diag(aleph0) @ J
        A[c, w] = -Le * np.diag(dn)
        B[c, c] = Le * I

        self._replace_boundary_rows(A, B, D1, J, aleph2, q)
        return A, B

    def _replace_boundary_rows(
        self,
        A: NDArray[np.float64],
        B: NDArray[np.float64],
        D1: NDArray[np.float64],
        J: NDArray[np.float64],
        aleph2: NDArray[np.float64],
        q: NDArray[np.float64],
    ) -> None:
        N = self.points
        walls = {0: self.problem.bottom, N - 1: self.problem.top}
        u, w, t, c = (self._block(name) for name in ("U", "W", "T", "Theta"))

        for wall, kind in walls.items():
            for block in (u, w, t, c):
                row = block.start + wall
                A[row] = 0.0
                B[row] = 0.0

            A[w.start + wall, w.start + wall] = 1.0
            A[t.start + wall, t.start + wall] = 1.0
            if kind is BoundaryKind.RIGID:
                A[u.start + wall, u.start + wall] = 1.0
            else:
                A[u.start + wall, u] = D1[wall]

            # zero cell flux: D Theta - aleph2 Theta + q Phi = 0
            flux = A[c.start + wall]
            flux[c] = D1[wall]
            flux[c.start + wall] -= aleph2[wall]
            flux[c] += q[wall] * J[wall]

    def eigenpairs(self) -> tuple[NDArray[np.complex128], NDArray[np.complex128]]:
        """Finite eigenvalues sorted by decreasing real part, with their eigenvectors."""
        A, B = self.matrices()
        eigenvalues, eigenvectors = linalg.eig(A, B)
        finite = np.isfinite(eigenvalues) & (np.abs(eigenvalues) < INFINITE_EIGENVALUE)
        eigenvalues, eigenvectors = eigenvalues[finite], eigenvectors[:, finite]
        order = np.lexsort((-eigenvalues.imag, -eigenvalues.real))
        return eigenvalues[order], eigenvectors[:, order]

    def split_mode(self, eigenvector: NDArray[np.complex128]) -> dict[str, NDArray[np.complex128]]:
        return {name: eigenvector[self._block(name)] for name in FIELDS}


def spectrum_oracle(problem: StabilityProblem, points: int | None = None) -> list[complex]:
    eigenvalues, _ = DenseSpectrum(problem, points).eigenpairs()
    return [complex(value) for value in eigenvalues]


def rightmost(problem: StabilityProblem, points: int | None = None) -> complex:
    eigenvalues = spectrum_oracle(problem, points)
    return eigenvalues[0]


def nearest(problem: StabilityProblem, target: complex, points: int | None = None) -> complex:
    eigenvalues = np.array(spectrum_oracle(problem, points))
    return complex(eigenvalues[np.argmin(np.abs(eigenvalues - target))])


def refined_eigenvalue(problem: StabilityProblem, target: complex, points: int | None = None) -> complex:
    """Richardson extrapolation from grids N and 2N - 1 of the eigenvalue closest to target.

    The fine-grid eigenvalue is matched to the coarse one rather than ranked, so
    two modes trading places between grids are never mixed.
    """
    coarse_points = points or problem.z.size
    coarse = nearest(problem, target, coarse_points)
    fine = nearest(problem, coarse, 2 * coarse_points - 1)
    refined = (4 * fine - coarse) / 3
    logger.debug("eigenvalue near %s: N=%d %s, 2N-1 %s, refined %s", target, coarse_points, coarse, fine, refined)
    return refined


def refined_rightmost(problem: StabilityProblem, points: int | None = None) -> complex:
    return refined_eigenvalue(problem, rightmost(problem, points), points)


def oracle_seed(problem: StabilityProblem, normalization: Normalization = Normalization.VELOCITY) -> GrowthResult:
    """Start for the growth-rate solver from the rightmost dense eigenpair the normalization can scale.

    Only the eigenvalue and the cell count are taken from the dense mode; the
    profiles are the smooth sinusoidal seeds, since derivatives of a discrete
    eigenvector up to third order are too noisy to start Newton iterations.
    Modes whose anchored field (W, or T under the temperature normalization)
    vanishes are skipped.
    """
    spectrum = DenseSpectrum(problem)
    eigenvalues, eigenvectors = spectrum.eigenpairs()
    field = "T" if normalization is Normalization.TEMPERATURE else "W"

    for index, sigma in enumerate(eigenvalues):
        fields = spectrum.split_mode(eigenvectors[:, index])
        scale = max(float(np.max(np.abs(fields[name]))) for name in ("W", "T", "Theta"))
        try:
            cells = mode_number(fields[field], scale)
        except DegenerateEigenfunctionError:
            continue
        logger.debug("dense seed: eigenvalue %d of %d, sigma=%s, %d cells", index, eigenvalues.size, sigma, cells)
        return GrowthResult(
            sigma=complex(sigma),
            z=problem.z,
            states=seed_states(problem, problem.z, cells, normalization).astype(complex),
            converged=True,
            iterations=0,
            residual=float("nan"),
            normalization=normalization,
            message=DENSE_SEED,
        )
    raise DegenerateEigenfunctionError()
