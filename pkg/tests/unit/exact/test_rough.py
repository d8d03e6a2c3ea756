"""Unit tests for rough counts R(n, m) and the permutation proportions p(n, m)."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from pydantic import ValidationError

from divgaps.errors import IntegralityError, InvalidParameterError, ResourceLimitExceededError
from divgaps.exact import rough
from divgaps.exact.models import RoughTable, require_field_size
from divgaps.exact.rough import (
    perm_rough,
    perm_rough_column,
    perm_rough_counts,
    perm_rough_gf,
    r_ratio,
    rough_counts,
    rough_recurrence_residual,
    rough_table_gf,
    rough_table_rec,
)

pytestmark = pytest.mark.unit


class TestRoughTables:
    """Test both derivations of R(n, m)."""

    def test_only_irreducible_quadratic_is_one_rough(self):
        assert rough_table_gf(2, 1, 2).counts[2] == 1
        assert rough_table_rec(2, 1, 2).counts[2] == 1

    def test_vanishes_for_degrees_up_to_m(self):
        assert rough_table_gf(2, 3, 2).counts[2] == 0
        assert rough_table_rec(2, 3, 5).counts[1:4] == (0, 0, 0)

    def test_m_zero_counts_everything(self):
        assert rough_table_gf(3, 0, 5).counts[5] == 243
        assert rough_table_rec(2, 0, 4).counts[4] == 16

    def test_cubics_without_roots_over_f2(self):
        """Test R(3, 1) = I_3 = 2 for q = 2."""
        assert rough_counts(2, 1, 3)[3] == 2

    def test_m_beyond_half_degree_counts_irreducibles(self):
        """Test for m >= n/2 the only m-rough polynomials are irreducible."""
        assert rough_counts(3, 3, 6)[5] == 48

    def test_methods_agree_q5(self):
        assert rough_table_gf(5, 2, 7).counts == rough_table_rec(5, 2, 7).counts

    @given(
        q=st.integers(min_value=2, max_value=9),
        m=st.integers(min_value=0, max_value=8),
        n_max=st.integers(min_value=0, max_value=30),
    )
    @settings(max_examples=40, deadline=None)
    def test_methods_agree(self, q, m, n_max):
        """Test the product expansion and the recurrence give equal tables."""
        assert rough_table_gf(q, m, n_max).counts == rough_table_rec(q, m, n_max).counts

    def test_bit_cap(self):
        with pytest.raises(ResourceLimitExceededError):
            rough_table_gf(7, 5, 60, bit_cap=64)

    def test_invalid_arguments(self):
        with pytest.raises(InvalidParameterError):
            rough_table_gf(1, 1, 5)
        with pytest.raises(InvalidParameterError):
            rough_table_rec(2, -1, 5)

    def test_table_validation_rejects_bad_counts(self):
        with pytest.raises(ValidationError):
            RoughTable(q=2, m=1, counts=(1, 1))
        with pytest.raises(ValidationError):
            RoughTable(q=2, m=0, counts=(1, 2, 3))
        with pytest.raises(ValidationError):
            RoughTable(q=2, m=1, counts=(0,))

    def test_table_ratio(self):
        table = rough_table_rec(2, 1, 4)
        assert table.n_max == 4
        assert table.ratio(2) == Fraction(1, 4)


class TestRRatio:
    """Test r(n, m) = R(n, m)/q^n."""

    @pytest.mark.parametrize(
        ("q", "n", "m", "expected"),
        [
            (2, 2, 1, Fraction(1, 4)),
            (2, 5, 5, Fraction(0)),
            (2, 0, 9, Fraction(1)),
            (3, 2, 1, Fraction(1, 3)),
        ],
    )
    def test_values(self, q, n, m, expected):
        assert r_ratio(q, n, m) == expected

    def test_lowest_terms(self):
        value = r_ratio(2, 4, 1)
        assert value == Fraction(rough_counts(2, 1, 4)[4], 16)
        assert value.denominator in (1, 2, 4, 8, 16)

    def test_recurrence_residual_shrinks_with_m(self):
        """Test n·r(n,m) - 1 - Σ r(k,m) moves towards 0 as m grows."""
        coarse = abs(rough_recurrence_residual(2, 40, 2))
        fine = abs(rough_recurrence_residual(2, 40, 8))
        assert fine < coarse < 1

    def test_recurrence_residual_requires_n_above_m(self):
        with pytest.raises(InvalidParameterError):
            rough_recurrence_residual(2, 3, 3)


class TestPermRough:
    """Test p(n, m), permutations without short cycles."""

    @pytest.mark.parametrize(
        ("n", "m", "expected"),
        [
            (3, 1, Fraction(1, 3)),
            (0, 7, Fraction(1)),
            (2, 1, Fraction(1, 2)),
            (4, 1, Fraction(3, 8)),
            (4, 2, Fraction(1, 4)),
            (3, 3, Fraction(0)),
        ],
    )
    def test_values(self, n, m, expected):
        assert perm_rough(n, m) == expected

    def test_derangement_counts(self):
        assert perm_rough_counts(1, 6) == (1, 0, 1, 2, 9, 44, 265)

    def test_m_zero_is_one(self):
        assert perm_rough_column(0, 5) == (Fraction(1),) * 6

    @given(m=st.integers(min_value=0, max_value=12), n_max=st.integers(min_value=0, max_value=40))
    @settings(max_examples=40, deadline=None)
    def test_generating_function_agrees(self, m, n_max):
        """Test [z^n] D_m(z) equals the recurrence column."""
        assert perm_rough_gf(m, n_max) == perm_rough_column(m, n_max)

    def test_negative_n_rejected(self):
        with pytest.raises(InvalidParameterError):
            perm_rough(-1, 1)


@pytest.fixture
def corrupted_weights(monkeypatch):
    """Weights c_t off by one, so n·R(n, m) stops being a multiple of n."""
    original = rough.weighted_irr_sums

    def shifted(q, m, n_max):
        return tuple(w + 1 if t > m else w for t, w in enumerate(original(q, m, n_max)))

    rough_counts.cache_clear()
    monkeypatch.setattr(rough, "weighted_irr_sums", shifted)
    yield
    rough_counts.cache_clear()


class TestIntegrality:
    """Test the exact recurrence refuses a fractional count."""

    def test_rough_counts_raise(self, corrupted_weights):
        # c_2 = 2·I_2(5) = 20 becomes 21, and R(2, 1) = 21 / 2.
        with pytest.raises(IntegralityError) as exc_info:
            rough_counts(5, 1, 7)
        assert exc_info.value.divisor == 2
        assert exc_info.value.total == 21


class TestRequireFieldSize:
    """Test the field-size guard shared by q-dependent kinds."""

    def test_passes_valid_q(self):
        assert require_field_size(4, "r") == 4

    @pytest.mark.parametrize("q", [None, 1, True])
    def test_rejects(self, q):
        with pytest.raises(InvalidParameterError) as exc_info:
            require_field_size(q, "r")
        assert exc_info.value.parameter == "q"


class TestMonotoneInM:
    """Test rough proportions never increase as m grows."""

    @pytest.mark.parametrize("q", [2, 3, 4])
    def test_r_nonincreasing(self, q):
        columns = [rough_counts(q, m, 18) for m in range(0, 9)]
        for lower, upper in zip(columns, columns[1:]):
            assert all(b <= a for a, b in zip(lower, upper))

    def test_p_nonincreasing(self):
        columns = [perm_rough_column(m, 25) for m in range(0, 12)]
        for lower, upper in zip(columns, columns[1:]):
            assert all(b <= a for a, b in zip(lower, upper))
