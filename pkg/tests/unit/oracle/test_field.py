"""Unit tests for finite field construction."""

import pytest

from divgaps.errors import InvalidFieldError, ResourceLimitExceededError
from divgaps.oracle.field import build_field, field_of_size, least_irreducible

pytestmark = pytest.mark.unit


class TestBuildField:
    """Test F_{p^k} tables."""

    def test_characteristic_two(self):
        gf = build_field(2)
        assert gf.q == 2
        assert gf.add(1, 1) == 0

    def test_prime_field_multiplication(self):
        assert build_field(3).mul(2, 2) == 1

    def test_f4_multiplicative_group_has_order_three(self):
        gf = build_field(2, 2)
        assert gf.q == 4
        assert all(gf.power(a, 3) == 1 for a in range(1, 4))

    @pytest.mark.parametrize(("p", "k"), [(2, 2), (2, 3), (3, 2), (5, 1)])
    def test_field_axioms(self, p, k):
        """Test inverses, distributivity and commutativity exhaustively."""
        gf = build_field(p, k)
        elements = list(gf.elements())
        for a in elements:
            assert gf.add(a, gf.neg(a)) == 0
            assert gf.sub(a, a) == 0
            if a:
                assert gf.mul(a, gf.inv(a)) == 1
            for b in elements:
                assert gf.mul(a, b) == gf.mul(b, a)
                for c in elements:
                    assert gf.mul(a, gf.add(b, c)) == gf.add(gf.mul(a, b), gf.mul(a, c))

    def test_zero_has_no_inverse(self):
        with pytest.raises(ZeroDivisionError):
            build_field(5).inv(0)

    def test_identity_is_p_and_k(self):
        assert build_field(3, 2) == field_of_size(9)
        assert hash(build_field(3, 2)) == hash(field_of_size(9))
        assert build_field(3) != build_field(3, 2)

    def test_tables_are_read_only(self):
        with pytest.raises(ValueError):
            build_field(2).add_table[0, 0] = 1

    @pytest.mark.parametrize(("p", "k"), [(4, 1), (6, 1), (2, 0), (1, 1)])
    def test_invalid_fields(self, p, k):
        with pytest.raises(InvalidFieldError):
            build_field(p, k)

    def test_budget(self):
        with pytest.raises(ResourceLimitExceededError) as exc_info:
            build_field(2, 10, budget=100)
        assert exc_info.value.limit_type == "enumeration_budget"


class TestFieldOfSize:
    """Test prime-power dispatch."""

    def test_prime_power(self):
        gf = field_of_size(8)
        assert (gf.p, gf.k) == (2, 3)

    def test_not_a_prime_power(self):
        with pytest.raises(InvalidFieldError):
            field_of_size(6)


def test_least_irreducible():
    """Test the lexicographically least modulus: x^2 + x + 1 over F_2, x^2 + 1 over F_3."""
    assert least_irreducible(2, 2) == (1, 1, 1)
    assert least_irreducible(3, 2) == (1, 0, 1)
    assert least_irreducible(2, 3) == (1, 1, 0, 1)
