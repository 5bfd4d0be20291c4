from fractions import Fraction

import pytest

from hyperbranch.errors import ErrorType, HyperbranchError
from hyperbranch.params import Family, make_params
from hyperbranch.scalars import IMAG_UNIT, GaussRational
from hyperbranch.sympoly import (
    OneVarPoly,
    SymPoly,
    collect_mbasis,
    elementary,
    evaluate,
    expand,
    mbasis_mul,
    merge_with_univariate,
    onevar_basis,
    orbit_size,
)

ONE = GaussRational(1)


def m(nvars: int, lam: tuple[int, ...], coeff: object = ONE) -> SymPoly:
    return SymPoly.monomial(nvars, lam, GaussRational.parse(coeff))


class TestSymPoly:
    def test_zero_terms_are_dropped(self) -> None:
        poly = SymPoly(2, {(1,): ONE, (2,): GaussRational(0)})

        assert poly.support() == [(1,)]

    def test_padded_keys_merge(self) -> None:
        poly = SymPoly(2, {(1, 0): ONE, (1,): GaussRational(2), (0, 0): ONE})

        assert poly.terms == {(1,): 3, (): 1}
        assert poly.coefficient((1, 0)) == 3

    def test_cancelling_padded_keys_vanish(self) -> None:
        poly = SymPoly(2, {(2, 0): ONE, (2,): -ONE})

        assert poly.is_zero()

    def test_too_many_parts(self) -> None:
        with pytest.raises(HyperbranchError) as info:
            SymPoly(1, {(1, 1): ONE})
        assert info.value.error_type is ErrorType.INVALID_PARTITION

    def test_ordered_from_the_top(self) -> None:
        poly = m(2, ()) + m(2, (1, 1)) + m(2, (2,))

        assert [lam for lam, _ in poly.ordered()] == [(2,), (1, 1), ()]

    def test_json_form(self) -> None:
        poly = m(1, (2,)) - m(1, (), Fraction(1, 2))

        assert poly.to_json() == {
            "nvars": 1,
            "terms": [
                {"mu": [2], "coeff": {"re": "1", "im": "0"}},
                {"mu": [], "coeff": {"re": "-1/2", "im": "0"}},
            ],
        }

    def test_mixed_nvars_raise(self) -> None:
        with pytest.raises(HyperbranchError):
            m(1, (1,)) + m(2, (1,))


class TestProducts:
    def test_square_of_power_sum_in_two_vars(self) -> None:
        product = mbasis_mul(m(2, (1,)), m(2, (1,)))

        assert product == m(2, (2,)) + m(2, (1, 1), 2)

    def test_square_in_one_var(self) -> None:
        assert mbasis_mul(m(1, (1,)), m(1, (1,))) == m(1, (2,))

    def test_unit(self) -> None:
        f = m(3, (2, 1)) + m(3, (), 5)

        assert mbasis_mul(f, m(3, ())) == f

    def test_elementary(self) -> None:
        assert elementary(3, 2, ONE) == m(3, (1, 1))
        assert elementary(1, 2, ONE).is_zero()


class TestEvaluate:
    def test_monomials(self) -> None:
        point = [GaussRational(2), GaussRational(3)]

        assert evaluate(m(2, (1, 1)), point) == 6
        assert evaluate(m(2, (2,)), point) == 13

    def test_origin_gives_constant_term(self) -> None:
        f = m(2, (2, 1)) + m(2, (), 7)

        assert evaluate(f, [GaussRational(0), GaussRational(0)]) == 7

    def test_wrong_arity(self) -> None:
        with pytest.raises(HyperbranchError):
            evaluate(m(2, (1,)), [ONE])


class TestCollect:
    def test_orbit_sizes(self) -> None:
        assert orbit_size((1, 0)) == 2
        assert orbit_size((1, 1, 0)) == 3
        assert orbit_size((2, 1, 0)) == 6

    def test_round_trip_through_exponents(self) -> None:
        f = m(3, (2, 1)) + m(3, (1, 1, 1), 4)

        assert collect_mbasis(expand(f), 3) == f

    def test_incomplete_orbit_is_rejected(self) -> None:
        with pytest.raises(HyperbranchError) as info:
            collect_mbasis({(1, 0): ONE}, 2)
        assert info.value.error_type is ErrorType.NOT_SYMMETRIC


class TestMerge:
    def test_one_variable_from_nothing(self) -> None:
        half = GaussRational(Fraction(1, 2))
        u = OneVarPoly((-half, GaussRational(0), ONE))

        merged = merge_with_univariate(SymPoly.constant(0, ONE), u)

        assert collect_mbasis(merged, 1) == m(1, (2,)) - m(1, (), half)

    def test_constant_merge(self) -> None:
        merged = merge_with_univariate(SymPoly.constant(2, ONE), OneVarPoly((ONE,)))

        assert collect_mbasis(merged, 3) == m(3, ())

    def test_raw_merge_is_not_symmetric(self) -> None:
        merged = merge_with_univariate(m(1, (1,)), OneVarPoly((ONE,)))

        with pytest.raises(HyperbranchError) as info:
            collect_mbasis(merged, 2)
        assert info.value.error_type is ErrorType.NOT_SYMMETRIC


class TestOneVarBasis:
    def test_askey_wilson_start(self) -> None:
        params = make_params(
            Family.AW,
            {
                "q": "1/4",
                "t": "1/3",
                "t0": "1/2",
                "t1": "1/2",
                "t2": "1/2",
                "t3": "1/2",
                "t0_hat": "1/2",
            },
        )

        assert onevar_basis(Family.AW, 0, params) == OneVarPoly((ONE,))
        first = onevar_basis(Family.AW, 1, params)
        assert first == OneVarPoly((GaussRational(Fraction(-5, 2)), ONE))

    def test_jacobi_half_angle(self) -> None:
        params = make_params(Family.JACOBI, {"g": 1, "g0": 2, "g1": 3})

        basis = onevar_basis(Family.JACOBI, 1, params)

        assert basis == OneVarPoly(
            (GaussRational(Fraction(1, 2)), GaussRational(Fraction(-1, 4)))
        )
        assert basis.evaluate(GaussRational(2)) == 0

    def test_wilson_conjugate_product(self) -> None:
        params = make_params(
            Family.WILSON, {"g": 1, "g0": 3, "g1": 1, "g2": 1, "g3": 1}
        )

        assert onevar_basis(Family.WILSON, 1, params) == OneVarPoly(
            (GaussRational(9), ONE)
        )

    def test_chahn_is_imaginary_linear(self) -> None:
        params = make_params(Family.CHAHN, {"g": 1, "g0": 2, "g1": 1})

        assert onevar_basis(Family.CHAHN, 1, params) == OneVarPoly(
            (GaussRational(2), IMAG_UNIT)
        )

    def test_confluent_families_use_powers(self) -> None:
        params = make_params(Family.HERMITE, {"g": 1, "omega": 1})

        assert onevar_basis(Family.HERMITE, 3, params) == OneVarPoly(
            (0, 0, 0, ONE)
        )
