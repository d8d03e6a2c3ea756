"""Unit tests for the Buchstab ω grid."""

import math

import numpy as np
import pytest

from divgaps.asymptotics.buchstab import (
    EXP_NEG_GAMMA,
    gamma_bound_violations,
    omega_closed_form,
    omega_grid_error,
    solve_buchstab,
)
from divgaps.errors import InvalidParameterError

pytestmark = pytest.mark.unit


class TestSolveBuchstab:
    """Test ω against its closed forms and limit."""

    def test_closed_form_values(self, omega):
        assert omega(0.5) == 0.0
        assert omega(1.5) == pytest.approx(2.0 / 3.0, abs=1e-14)
        assert omega(2.5) == pytest.approx(0.56218604, abs=1e-8)

    def test_closed_form_error_below_order_bound(self, omega):
        errors = omega_grid_error(omega)
        assert errors["interval_1_2"] < 1e-14
        assert errors["interval_2_3"] < 10 * omega.step**4

    def test_limit(self, omega):
        assert EXP_NEG_GAMMA == pytest.approx(0.5614594835668851, abs=1e-15)
        assert omega(11.5) == pytest.approx(EXP_NEG_GAMMA, abs=1e-8)
        assert omega(40.0) == EXP_NEG_GAMMA

    def test_oscillates_around_limit(self, omega):
        """Test ω - e^{-γ} changes sign on [2, 6]."""
        u = omega.points()
        mask = (u >= 2.0) & (u <= 6.0)
        signs = np.sign(omega.values[mask] - EXP_NEG_GAMMA)
        assert np.any(signs > 0) and np.any(signs < 0)

    def test_gamma_bound(self, omega):
        assert gamma_bound_violations(omega) == []

    def test_grid_shape(self, omega):
        assert omega.origin == 1.0
        assert omega.end == 12.0
        assert omega.tail_kind == "constant"
        assert omega.tail_error_bound == pytest.approx(1.0 / math.factorial(12))

    def test_short_grid_extends_to_three(self):
        grid = solve_buchstab(2.0, 2.0**-8)
        assert grid.end == 3.0

    @pytest.mark.parametrize(
        ("u_max", "h", "tail_start"),
        [(1.5, 2.0**-8, None), (12.0, 2.0**-7, None), (12.0, 2.0**-8, 13.0)],
    )
    def test_invalid_arguments(self, u_max, h, tail_start):
        with pytest.raises(InvalidParameterError):
            solve_buchstab(u_max, h, tail_start)


def test_closed_form_is_continuous_at_two():
    left, right = omega_closed_form(np.array([2.0 - 1e-12, 2.0 + 1e-12]))
    assert left == pytest.approx(right, abs=1e-9)
