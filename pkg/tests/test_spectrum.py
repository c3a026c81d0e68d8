import numpy as np
import pytest

from schemas.params import BoundaryKind, SuspensionParams
from schemas.stability import Normalization
from solvers.basic_state import solve_basic_state
from solvers.spectrum import (
    DenseSpectrum,
    difference_operators,
    oracle_seed,
    nearest,
    refined_eigenvalue,
    refined_rightmost,
    rightmost,
    spectrum_oracle,
)
from solvers.stability import assemble, growth_rate


def relative(a: complex, b: complex) -> float:
    return abs(a - b) / max(abs(b), 1.0)


class TestDifferenceOperators:
    def test_exact_on_quadratics(self):
        D1, D2, J, h = difference_operators(21)
        z = np.linspace(0.0, 1.0, 21)
        f = 3 * z**2 - z + 2
        assert h == pytest.approx(0.05)
        assert np.allclose(D1 @ f, 6 * z - 1)
        assert np.allclose(D2 @ f, 6.0)

    def test_integral_from_top(self):
        _, _, J, _ = difference_operators(201)
        z = np.linspace(0.0, 1.0, 201)
        assert np.allclose(J @ np.ones_like(z), 1 - z)
        assert np.allclose(J @ z, (1 - z**2) / 2, atol=1e-12)


class TestDiffusionSpectrum:
    @pytest.fixture
    def problem(self, no_cells):
        return assemble(solve_basic_state(no_cells), 2.0, 0.0, 0.0)

    def test_uniform_concentration_mode(self, problem, no_cells):
        # Theta = const satisfies the zero-flux walls exactly
        assert rightmost(problem) == pytest.approx(-4.0 / no_cells.lewis, abs=1e-9)

    @pytest.mark.parametrize("m", [1, 2])
    def test_thermal_modes(self, problem, m):
        eigenvalues = np.array(spectrum_oracle(problem))
        expected = -(4.0 + (m * np.pi) ** 2)
        assert np.min(np.abs(eigenvalues - expected)) <= 1e-3 * abs(expected)

    def test_sorted_by_real_part(self, problem):
        eigenvalues = np.array(spectrum_oracle(problem))
        assert np.all(np.diff(eigenvalues.real) <= 1e-9)
        assert np.all(np.isfinite(eigenvalues))

    def test_temperature_seed(self, problem):
        seed = oracle_seed(problem, Normalization.TEMPERATURE)
        assert seed.states[8, 0] == pytest.approx(1.0)
        assert seed.normalization is Normalization.TEMPERATURE


class TestBenardSpectrum:
    def test_rigid_rigid_is_neutral(self, benard_rigid_rigid):
        problem = assemble(solve_basic_state(benard_rigid_rigid), 3.117, 0.0, 1707.76)
        assert abs(refined_rightmost(problem).real) <= 1e-3

    def test_seed_skips_modes_without_flow(self, benard_rigid_rigid):
        problem = assemble(solve_basic_state(benard_rigid_rigid), 3.117, 0.0, 1000.0)
        seed = oracle_seed(problem)
        assert seed.states[2, 0] == pytest.approx(1.0)
        assert np.max(np.abs(seed.W)) > 1e-6
        result = growth_rate(problem, seed, stationary=True)
        assert result.sigma.real < 0


class TestCoupledSpectrum:
    @pytest.fixture
    def problem(self, stress_free_params):
        return assemble(solve_basic_state(stress_free_params), 3.0, 150.0, stress_free_params.rayleigh_thermal)

    def test_conjugate_closure(self, problem):
        eigenvalues = np.array(spectrum_oracle(problem))
        for value in eigenvalues[np.abs(eigenvalues.imag) > 1e-8]:
            assert np.min(np.abs(eigenvalues - np.conj(value))) <= 1e-6 * max(abs(value), 1.0)

    def test_split_mode(self, problem):
        spectrum = DenseSpectrum(problem)
        _, vectors = spectrum.eigenpairs()
        fields = spectrum.split_mode(vectors[:, 0])
        assert set(fields) == {"P", "U", "W", "T", "Theta"}
        assert all(values.size == problem.z.size for values in fields.values())
        assert abs(fields["W"][0]) <= 1e-10 * np.max(np.abs(fields["W"]))

    def test_nearest_is_in_spectrum(self, problem):
        eigenvalues = spectrum_oracle(problem)
        assert nearest(problem, eigenvalues[3] + 1e-6) == eigenvalues[3]

    def test_refinement_follows_the_target(self, problem):
        eigenvalues = spectrum_oracle(problem)
        refined = refined_eigenvalue(problem, eigenvalues[2])
        assert relative(refined, eigenvalues[2]) <= 1e-2
        assert relative(refined_eigenvalue(problem, eigenvalues[0]), refined_rightmost(problem)) <= 1e-12

    def test_growth_rate_matches_refined_eigenvalue(self, problem):
        result = growth_rate(problem, oracle_seed(problem))
        assert relative(result.sigma, refined_eigenvalue(problem, result.sigma)) <= 1e-4

    def test_refinement_is_closer_to_fine_grid(self, problem):
        coarse = rightmost(problem)
        refined = refined_rightmost(problem)
        finest = rightmost(problem, 3 * problem.z.size - 2)
        assert abs(refined - finest) < abs(coarse - finest)


@pytest.mark.slow
class TestOracleEquivalence:
    def test_random_problems(self):
        rng = np.random.default_rng(7)
        for _ in range(10):
            params = SuspensionParams(
                swim_speed=rng.uniform(2.0, 15.0),
                optical_depth=rng.uniform(0.2, 1.0),
                incidence_angle_deg=rng.uniform(0.0, 80.0),
                rayleigh_thermal=rng.uniform(0.0, 300.0),
                top_boundary=BoundaryKind.RIGID if rng.random() < 0.5 else BoundaryKind.FREE,
            )
            k, rayleigh_bio = rng.uniform(1.0, 5.0), rng.uniform(0.0, 200.0)
            problem = assemble(solve_basic_state(params), k, rayleigh_bio, params.rayleigh_thermal)
            seed = oracle_seed(problem)
            result = growth_rate(problem, seed)
            assert relative(result.sigma, seed.sigma) <= 1e-2, params
            assert relative(result.sigma, refined_eigenvalue(problem, result.sigma)) <= 1e-4, params
