import numpy as np
import pytest

from exceptions.params import TaxisDomainError
from oracles.derivatives import fd_derivative_check
from physics.phototaxis import (
    ConstantTaxis,
    SineTaxis,
    taxis_curvature,
    taxis_derivative,
    taxis_for,
    taxis_value,
)
from schemas.params import SuspensionParams, TaxisForm


@pytest.fixture
def sine() -> SineTaxis:
    return SineTaxis(0.63, 0.8)


class TestSineTaxis:
    def test_sign_structure(self, sine):
        below = np.linspace(0.01, 0.62, 20)
        above = np.linspace(0.64, 1.25, 20)
        assert np.all(taxis_value(sine, below) > 0)
        assert np.all(taxis_value(sine, above) < 0)
        assert taxis_value(sine, [0.63])[0] == pytest.approx(0.0, abs=1e-15)

    def test_derivative(self, sine):
        assert fd_derivative_check(sine.value, sine.derivative, (0.0, 1.26)).passed

    def test_curvature(self, sine):
        assert fd_derivative_check(sine.derivative, sine.curvature, (0.0, 1.26), tol=1e-5).passed

    def test_negative_intensity(self, sine):
        for operation in (taxis_value, taxis_derivative, taxis_curvature):
            with pytest.raises(TaxisDomainError):
                operation(sine, [0.1, -0.2])


class TestConstantTaxis:
    def test_flat(self):
        taxis = ConstantTaxis(0.63, 1.5)
        G = np.linspace(0.0, 2.0, 5)
        assert np.all(taxis_value(taxis, G) == 1.5)
        assert np.all(taxis_derivative(taxis, G) == 0)
        assert np.all(taxis_curvature(taxis, G) == 0)

    def test_selected_from_params(self):
        taxis = taxis_for(SuspensionParams(taxis_form=TaxisForm.CONSTANT, taxis_amplitude=2.0))
        assert isinstance(taxis, ConstantTaxis)
        assert taxis.amplitude == 2.0


class TestDerivativeAudit:
    def test_detects_wrong_derivative(self):
        report = fd_derivative_check(np.sin, np.sin)
        assert not report.passed
        assert report.max_error > 0.5

    def test_accepts_correct_derivative(self):
        report = fd_derivative_check(np.sin, np.cos)
        assert report.passed
        assert report.max_error <= 1e-6

    def test_error_is_relative(self):
        def small(x):
            return 1e-3 * np.sin(x)

        def slightly_off(x):
            return 1e-3 * np.cos(x) * (1 + 1e-4)

        report = fd_derivative_check(small, slightly_off)
        assert not report.passed
        assert report.max_error == pytest.approx(1e-4, rel=0.05)

    def test_steep_taxis_at_fine_step(self):
        sine = SineTaxis(0.2)
        report = fd_derivative_check(sine.value, sine.derivative, (0.0, 0.4), step=1e-6)
        assert report.passed
        assert report.max_error <= 1e-6
