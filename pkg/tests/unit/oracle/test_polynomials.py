"""Unit tests for polynomials over F_q and their factorization."""

import pytest

from divgaps.errors import InvalidParameterError, ResourceLimitExceededError
from divgaps.exact.irreducibles import irr_count
from divgaps.oracle.field import build_field
from divgaps.oracle.polynomials import (
    FqPoly,
    divisor_degree_set,
    enumerate_divisor_degrees,
    enumerate_monic,
    factor,
    gen_irreducibles,
)

pytestmark = pytest.mark.unit


@pytest.fixture(scope="module")
def f2():
    return build_field(2)


@pytest.fixture(scope="module")
def f3():
    return build_field(3)


def _poly(gf, *coeffs):
    """Polynomial from coefficients listed low degree first."""
    return FqPoly(gf, tuple(coeffs))


class TestFqPoly:
    """Test polynomial arithmetic."""

    def test_trailing_zeros_stripped(self, f2):
        poly = _poly(f2, 1, 1, 0, 0)
        assert poly.coeffs == (1, 1)
        assert poly.degree == 1

    def test_str(self, f2, f3):
        assert str(_poly(f2, 1, 1, 1)) == "x^2 + x + 1"
        assert str(_poly(f3, 2, 0, 1)) == "x^2 + 2"
        assert str(_poly(f3, 0, 2)) == "2*x"
        assert str(_poly(f2, 0)) == "0"

    def test_square_in_characteristic_two(self, f2):
        assert _poly(f2, 1, 1) ** 2 == _poly(f2, 1, 0, 1)

    def test_divmod(self, f3):
        dividend = _poly(f3, 1, 0, 0, 1)  # x^3 + 1 = (x + 1)^3 over F_3
        quotient, remainder = dividend.divmod_monic(_poly(f3, 1, 1))
        assert quotient == _poly(f3, 1, 2, 1)
        assert remainder.is_zero()

    def test_divmod_requires_monic(self, f3):
        with pytest.raises(InvalidParameterError):
            _poly(f3, 1, 1).divmod_monic(_poly(f3, 1, 2))

    def test_index_round_trip(self, f3):
        poly = FqPoly.monic(f3, (2, 0, 1))
        assert FqPoly.from_index(f3, 3, poly.index) == poly

    def test_enumerate_monic(self, f2):
        quadratics = list(enumerate_monic(f2, 2))
        assert len(quadratics) == 4
        assert [p.index for p in quadratics] == [0, 1, 2, 3]
        assert all(p.is_monic and p.degree == 2 for p in quadratics)


class TestGenIrreducibles:
    """Test sieving irreducibles."""

    def test_f2_up_to_degree_two(self, f2):
        assert [str(p) for p in gen_irreducibles(f2, 2)] == ["x", "x + 1", "x^2 + x + 1"]

    def test_two_cubics_over_f2(self, f2):
        assert sum(1 for p in gen_irreducibles(f2, 3) if p.degree == 3) == 2

    def test_linear_over_f3(self, f3):
        assert len(gen_irreducibles(f3, 1)) == 3

    def test_counts_match_formula(self):
        gf = build_field(2, 2)
        found = gen_irreducibles(gf, 4)
        for d in range(1, 5):
            assert sum(1 for p in found if p.degree == d) == irr_count(4, d)

    def test_budget(self, f2):
        with pytest.raises(ResourceLimitExceededError):
            gen_irreducibles(f2, 12, budget=1000)


class TestFactor:
    """Test trial-division factorization."""

    def test_square_of_linear(self, f2):
        fact = factor(_poly(f2, 1, 0, 1))
        assert fact.factors == ((_poly(f2, 1, 1), 2),)

    def test_irreducible_quadratic(self, f2):
        poly = _poly(f2, 1, 1, 1)
        assert factor(poly).factors == ((poly, 1),)

    def test_x_cubed_plus_x(self, f2):
        fact = factor(_poly(f2, 0, 1, 0, 1))
        assert fact.factors == ((_poly(f2, 0, 1), 1), (_poly(f2, 1, 1), 2))
        assert fact.degrees() == [1, 1, 1]

    def test_product_round_trip(self, f3):
        irreducibles = gen_irreducibles(f3, 3)
        for poly in enumerate_monic(f3, 4):
            fact = factor(poly, irreducibles)
            assert fact.product() == poly
            assert sum(fact.degrees()) == 4

    def test_rejects_constants_and_non_monic(self, f3):
        with pytest.raises(InvalidParameterError):
            factor(_poly(f3, 1))
        with pytest.raises(InvalidParameterError):
            factor(_poly(f3, 1, 2))


class TestDivisorDegrees:
    """Test degree sets of monic divisors."""

    def test_irreducible(self, f2):
        assert divisor_degree_set(factor(_poly(f2, 1, 1, 1))).elements() == [0, 2]

    def test_x_times_square(self, f2):
        fact = factor(_poly(f2, 0, 1, 0, 1))
        assert divisor_degree_set(fact).elements() == [0, 1, 2, 3]

    def test_quintic_times_linear(self, f2):
        quintic = _poly(f2, 1, 0, 1, 0, 0, 1)  # x^5 + x^2 + 1
        fact = factor(quintic * _poly(f2, 0, 1))
        assert fact.degrees() == [1, 5]
        assert divisor_degree_set(fact).elements() == [0, 1, 5, 6]

    def test_subset_sums_equal_explicit_enumeration(self, f3):
        irreducibles = gen_irreducibles(f3, 2)
        for poly in enumerate_monic(f3, 5):
            fact = factor(poly, irreducibles)
            assert divisor_degree_set(fact) == enumerate_divisor_degrees(fact)
