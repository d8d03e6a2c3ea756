"""Unit tests for truncated power series."""

from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from divgaps.errors import InvalidParameterError, ResourceLimitExceededError
from divgaps.exact.series import TruncatedSeries, one_minus_z_power

pytestmark = pytest.mark.unit


class TestTruncatedSeries:
    """Test arithmetic on TruncatedSeries."""

    def test_from_sequence_pads_and_truncates(self):
        assert TruncatedSeries.from_sequence([1, 2], 3).coeffs == (1, 2, 0, 0)
        assert TruncatedSeries.from_sequence([1, 2, 3, 4], 1).coeffs == (1, 2)

    def test_empty_series_rejected(self):
        with pytest.raises(InvalidParameterError):
            TruncatedSeries(())

    def test_product_truncates_at_smaller_bound(self):
        a = TruncatedSeries((1, 1, 1, 1))
        b = TruncatedSeries((1, -1))
        assert (a * b).coeffs == (1, 0)

    def test_geometric_times_one_minus_z(self):
        """Test 1/(1 - 3z) · (1 - 3z) = 1."""
        geometric = TruncatedSeries.geometric(3, 6)
        factor = TruncatedSeries.from_sequence([1, -3], 6)
        assert (geometric * factor).coeffs == (1, 0, 0, 0, 0, 0, 0)

    def test_power_matches_binomial(self):
        base = TruncatedSeries.from_sequence([1, 1], 8)
        assert (base**5).coeffs == tuple(comb(5, j) for j in range(9))

    def test_negative_power_rejected(self):
        with pytest.raises(InvalidParameterError):
            TruncatedSeries((1, 1)) ** -1

    def test_stretch(self):
        series = TruncatedSeries((1, 2, 3))
        assert series.stretch(2, 5).coeffs == (1, 0, 2, 0, 3, 0)

    def test_exp_of_z_is_exponential_series(self):
        series = TruncatedSeries((Fraction(0), Fraction(1), Fraction(0), Fraction(0), Fraction(0)))
        assert series.exp().coeffs == (
            Fraction(1),
            Fraction(1),
            Fraction(1, 2),
            Fraction(1, 6),
            Fraction(1, 24),
        )

    def test_exp_requires_zero_constant_term(self):
        with pytest.raises(InvalidParameterError):
            TruncatedSeries((1, 1)).exp()

    def test_partial_sums(self):
        assert TruncatedSeries((1, 2, 3)).partial_sums().coeffs == (1, 3, 6)

    def test_bit_cap_enforced(self):
        """Test coefficients beyond the cap abort the product."""
        big = TruncatedSeries.from_sequence([1, 2**70], 2, bit_cap=64)
        with pytest.raises(ResourceLimitExceededError) as exc_info:
            big * big
        assert exc_info.value.limit_type == "coefficient_bits"


class TestOneMinusZPower:
    """Test (1 - z^k)^e expansions."""

    def test_binomial_coefficients_on_stretched_grid(self):
        series = one_minus_z_power(2, 3, 7)
        assert series.coeffs == (1, 0, -3, 0, 3, 0, -1, 0)

    def test_exponent_zero_is_one(self):
        assert one_minus_z_power(3, 0, 4).coeffs == (1, 0, 0, 0, 0)

    def test_unknown_method_rejected(self):
        with pytest.raises(InvalidParameterError):
            one_minus_z_power(1, 2, 4, method="fft")  # type: ignore[arg-type]

    @given(
        k=st.integers(min_value=1, max_value=5),
        exponent=st.integers(min_value=0, max_value=40),
        bound=st.integers(min_value=0, max_value=30),
    )
    @settings(max_examples=60, deadline=None)
    def test_binomial_and_squaring_agree(self, k, exponent, bound):
        """Test both expansion methods produce the same integers."""
        assert (
            one_minus_z_power(k, exponent, bound, method="binomial").coeffs
            == one_minus_z_power(k, exponent, bound, method="squaring").coeffs
        )
