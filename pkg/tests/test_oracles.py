from fractions import Fraction

import pytest

from hyperbranch.branching import build_regularized
from hyperbranch.errors import ErrorType, HyperbranchError
from hyperbranch.oracles import (
    circle_moment,
    functional,
    gamma_moment,
    gaussian_moment,
    inner_product,
    moment_for,
    stieltjes,
    weight_map,
)
from hyperbranch.params import Family, make_params
from hyperbranch.scalars import GaussRational
from hyperbranch.sympoly import OneVarPoly, SymPoly


class TestMoments:
    def test_gaussian(self) -> None:
        moment = gaussian_moment(GaussRational(1))

        assert moment(0) == 1
        assert moment(1) == 0
        assert moment(2) == Fraction(1, 2)
        assert moment(4) == Fraction(3, 4)

    def test_gamma(self) -> None:
        moment = gamma_moment(GaussRational(3), GaussRational(2))

        assert moment(1) == Fraction(3, 2)
        assert moment(2) == 3

    def test_circle(self) -> None:
        assert [circle_moment(k) for k in range(5)] == [1, 0, 2, 0, 6]

    def test_no_moments_for_wilson(self) -> None:
        names = ("g", "g0", "g1", "g2", "g3")
        params = make_params(Family.WILSON, dict.fromkeys(names, 1))

        with pytest.raises(HyperbranchError) as info:
            moment_for(params)
        assert info.value.error_type is ErrorType.UNSUPPORTED_FAMILY

    def test_functional(self) -> None:
        moment = gaussian_moment(GaussRational(1))
        square = OneVarPoly((GaussRational(0), GaussRational(0), GaussRational(1)))

        assert functional(square, moment) == Fraction(1, 2)


class TestStieltjes:
    def test_gaussian_recurrence(self) -> None:
        polys, recurrence = stieltjes(gaussian_moment(GaussRational(2)), 3)

        assert polys[2] == OneVarPoly(
            (GaussRational(Fraction(-1, 4)), GaussRational(0), GaussRational(1))
        )
        assert recurrence[1] == (0, Fraction(1, 4))
        assert recurrence[2] == (0, Fraction(2, 4))

    def test_gamma_recurrence(self) -> None:
        h, omega = GaussRational(3), GaussRational(2)

        _, recurrence = stieltjes(gamma_moment(h, omega), 3)

        # a_m = (2m + h)/omega and b_m = m(m + h - 1)/omega^2
        assert recurrence[0] == (Fraction(3, 2), 0)
        assert recurrence[1] == (Fraction(5, 2), Fraction(3, 4))
        assert recurrence[2] == (Fraction(7, 2), 2)


class TestWeights:
    def test_hermite_weight_in_two_variables(self) -> None:
        params = make_params(Family.HERMITE, {"g": 1, "omega": 1})

        weight = weight_map(params, 2)

        assert weight == {(2, 0): 1, (1, 1): -2, (0, 2): 1}

    def test_fractional_coupling_is_unsupported(self) -> None:
        params = make_params(Family.HERMITE, {"g": "1/2", "omega": 1})

        with pytest.raises(HyperbranchError) as info:
            weight_map(params, 2)
        assert info.value.error_type is ErrorType.UNSUPPORTED_PARAMETERS

    def test_jacobi_needs_half_integer_exponents(self) -> None:
        params = make_params(Family.JACOBI, {"g": 1, "g0": 1, "g1": "1/2"})

        with pytest.raises(HyperbranchError, match="g0 - 1/2"):
            weight_map(params, 1)


class TestInnerProduct:
    def test_hermite_pair_is_orthogonal_to_constants(self) -> None:
        params = make_params(Family.HERMITE, {"g": 1, "omega": 1})
        poly = SymPoly(
            2, {(1, 1): GaussRational(1), (): GaussRational(Fraction(1, 2))}
        )

        assert inner_product(poly, (), params) == 0
        assert inner_product(SymPoly(2, {(1, 1): GaussRational(1)}), (), params) == (
            Fraction(-1, 2)
        )

    def test_built_laguerre_polynomial(self) -> None:
        params = make_params(Family.LAGUERRE, {"g": 1, "h": 2, "omega": 3})
        poly = build_regularized((1, 1), 2, params)

        for mu in [(), (1,)]:
            assert inner_product(poly, mu, params) == 0

    def test_other_families_are_rejected(self) -> None:
        params = make_params(Family.CHAHN, {"g": 1, "g0": 1, "g1": 1})

        with pytest.raises(HyperbranchError) as info:
            inner_product(SymPoly(1, {(): GaussRational(1)}), (), params)
        assert info.value.error_type is ErrorType.UNSUPPORTED_FAMILY
