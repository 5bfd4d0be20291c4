from fractions import Fraction

import pytest

from hyperbranch.errors import ErrorType, HyperbranchError
from hyperbranch.scalars import (
    IMAG_UNIT,
    GaussRational,
    LimitScalar,
    limit_at_zero,
    pochhammer,
    q_pochhammer,
    rational_sqrt,
)


class TestGaussRational:
    def test_parse_forms(self) -> None:
        assert GaussRational.parse("3/4") == Fraction(3, 4)
        assert GaussRational.parse(2) == 2
        assert GaussRational.parse({"re": "1/2", "im": "-1"}) == GaussRational(
            Fraction(1, 2), -1
        )

    @pytest.mark.parametrize("value", ["x", "1/0", True, 0.5, None])
    def test_parse_rejects_inexact_values(self, value: object) -> None:
        with pytest.raises(HyperbranchError) as info:
            GaussRational.parse(value)
        assert info.value.error_type is ErrorType.VALIDATION

    def test_field_arithmetic(self) -> None:
        z = GaussRational(1, 2)
        w = GaussRational(3, -1)

        assert z + w == GaussRational(4, 1)
        assert z * w == GaussRational(5, 5)
        assert (z / w) * w == z
        assert IMAG_UNIT**2 == -1
        assert z.conjugate() == GaussRational(1, -2)
        assert (1 / z) == GaussRational(Fraction(1, 5), Fraction(-2, 5))

    def test_division_by_zero(self) -> None:
        with pytest.raises(ZeroDivisionError):
            GaussRational(1) / GaussRational(0)

    def test_json_form(self) -> None:
        assert GaussRational(Fraction(-1, 2), 3).to_json() == {
            "re": "-1/2",
            "im": "3",
        }

    def test_hash_matches_rationals(self) -> None:
        assert hash(GaussRational(Fraction(1, 3))) == hash(Fraction(1, 3))

    def test_parts_are_fractions(self) -> None:
        z = GaussRational(Fraction(1, 2), -3)

        assert isinstance(z.re, Fraction)
        assert isinstance(z.im, Fraction)
        assert (z.re, z.im) == (Fraction(1, 2), Fraction(-3))
        assert z.real_part() == Fraction(1, 2)
        assert z.imag_part() == -3


class TestPochhammer:
    def test_rising_factorial(self) -> None:
        assert pochhammer(GaussRational(1), 3) == 6
        assert pochhammer(GaussRational(Fraction(1, 2)), 2) == Fraction(3, 4)
        assert pochhammer(GaussRational(5, 7), 0) == 1

    def test_q_pochhammer(self) -> None:
        q = GaussRational(Fraction(1, 3))

        assert q_pochhammer(q, q, 1) == 1 - q
        assert q_pochhammer(GaussRational(7), q, 0) == 1
        assert q_pochhammer(GaussRational(1), q, 3) == 0


class TestLimitScalar:
    def test_removable_singularity(self) -> None:
        beta = LimitScalar.beta()

        assert limit_at_zero((beta * beta + beta) / beta) == 1

    def test_rational_function(self) -> None:
        beta = LimitScalar.beta()

        assert limit_at_zero((2 + beta) / (1 + beta)) == 2

    def test_vanishing_limit(self) -> None:
        beta = LimitScalar.beta()

        assert limit_at_zero(beta / (1 + beta)) == 0

    def test_pole(self) -> None:
        beta = LimitScalar.beta()

        with pytest.raises(HyperbranchError) as info:
            limit_at_zero(1 / beta)
        assert info.value.error_type is ErrorType.POLE_AT_ZERO

    def test_complex_coefficients(self) -> None:
        beta = LimitScalar.beta()
        value = (beta * IMAG_UNIT + 3) / (beta + 1)

        assert value.limit_at_zero() == 3
        assert (value * beta * IMAG_UNIT / beta).limit_at_zero() == GaussRational(0, 3)

    def test_constants_compare_with_plain_numbers(self) -> None:
        assert LimitScalar.constant(Fraction(1, 2)) == Fraction(1, 2)
        assert LimitScalar.beta() ** 0 == 1

    def test_complex_products(self) -> None:
        beta = LimitScalar.beta()

        product = (1 + IMAG_UNIT * beta) * (1 - IMAG_UNIT * beta)

        assert product == 1 + beta * beta
        assert (IMAG_UNIT * beta) ** 2 == -(beta * beta)

    def test_parts_treat_beta_as_real(self) -> None:
        beta = LimitScalar.beta()
        value = (2 + IMAG_UNIT * beta) / (1 + beta)

        assert value.real_part() == 2 / (1 + beta)
        assert value.imag_part() == beta / (1 + beta)
        assert value.conjugate() == (2 - IMAG_UNIT * beta) / (1 + beta)


def test_rational_sqrt() -> None:
    assert rational_sqrt(GaussRational(Fraction(9, 4))) == Fraction(3, 2)
    assert rational_sqrt(GaussRational(2)) is None
    assert rational_sqrt(GaussRational(-4)) is None
    assert rational_sqrt(GaussRational(4, 1)) is None
