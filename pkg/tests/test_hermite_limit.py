from fractions import Fraction

import pytest

from hyperbranch.branching import build
from hyperbranch.errors import ErrorType, HyperbranchError
from hyperbranch.hermite_limit import (
    HermiteBuildPlan,
    build_hermite_exact,
    expand_in_hermite,
    extract_pieri_hermite,
    hermite_pieri_expansion,
    pieri_routed,
)
from hyperbranch.params import Family, lift, make_params
from hyperbranch.pieri import PieriRequest, pieri_coeff
from hyperbranch.scalars import GaussRational
from hyperbranch.sympoly import SymPoly

G = Fraction(3, 2)
OMEGA = Fraction(2)


def poly(nvars: int, terms: dict[tuple[int, ...], object]) -> SymPoly:
    return SymPoly(
        nvars, {lam: GaussRational.parse(value) for lam, value in terms.items()}
    )


def plan(lam: tuple[int, ...], n: int, split: tuple | None = None) -> HermiteBuildPlan:
    return HermiteBuildPlan.create(lam, n, G, OMEGA, split)


class TestPlan:
    def test_default_split_is_even(self) -> None:
        created = plan((1,), 1)

        assert created.omega0 == 1
        assert created.omega1 == 1

    def test_split_must_sum_to_omega(self) -> None:
        with pytest.raises(HyperbranchError, match="omega0 \\+ omega1"):
            plan((1,), 1, (1, 2))

    @pytest.mark.parametrize(("g", "omega"), [(0, 1), (1, -1), ("1/2", 0)])
    def test_parameters_must_be_positive(self, g: object, omega: object) -> None:
        with pytest.raises(HyperbranchError) as info:
            HermiteBuildPlan.create((1,), 1, g, omega)
        assert info.value.error_type is ErrorType.VALIDATION

    def test_partition_must_fit(self) -> None:
        with pytest.raises(HyperbranchError):
            plan((1, 1), 1)


class TestExactLimit:
    def test_empty_partition(self) -> None:
        assert build_hermite_exact(plan((), 3)) == poly(3, {(): 1})

    def test_one_variable(self) -> None:
        assert build_hermite_exact(plan((2,), 1)) == poly(
            1, {(2,): 1, (): Fraction(-1, 4)}
        )

    def test_two_variables(self) -> None:
        # g / (2 omega)
        assert build_hermite_exact(plan((1, 1), 2)) == poly(
            2, {(1, 1): 1, (): Fraction(3, 8)}
        )

    def test_split_does_not_matter(self) -> None:
        even = build_hermite_exact(plan((2, 1), 2))
        uneven = build_hermite_exact(plan((2, 1), 2, ("1/2", "3/2")))

        assert even == uneven

    def test_agrees_with_branching_construction(self) -> None:
        params = make_params(Family.HERMITE, {"g": G, "omega": OMEGA})

        assert build(Family.HERMITE, (2,), 2, params) == build_hermite_exact(
            plan((2,), 2)
        )


class TestExtraction:
    def test_expand_square(self) -> None:
        square = poly(1, {(2,): 1})

        assert expand_in_hermite(square, G, OMEGA) == {
            (2,): 1,
            (): Fraction(1, 4),
        }

    def test_one_variable_product(self) -> None:
        assert hermite_pieri_expansion((1,), 1, 1, G, OMEGA) == {
            (2,): 1,
            (): Fraction(1, 4),
        }

    @pytest.mark.parametrize("m", [1, 2, 3])
    def test_matches_closed_form_lowering(self, m: int) -> None:
        value = extract_pieri_hermite((m,), (m - 1,), 1, 1, G, OMEGA)

        assert value == Fraction(m, 4)

    def test_matches_two_variable_closed_form(self) -> None:
        params = make_params(Family.HERMITE, {"g": G, "omega": OMEGA})
        closed = pieri_coeff(PieriRequest(Family.HERMITE, (1,), (), 2, 1, params))

        assert extract_pieri_hermite((1,), (), 2, 1, G, OMEGA) == closed
        assert closed == Fraction(1, 2)

    def test_diagonal_vanishes_by_parity(self) -> None:
        assert extract_pieri_hermite((2,), (2,), 1, 1, G, OMEGA) == 0

    def test_outside_proximity(self) -> None:
        assert extract_pieri_hermite((3,), (1,), 2, 1, G, OMEGA) == 0

    def test_degree_zero(self) -> None:
        assert extract_pieri_hermite((2,), (2,), 1, 0, G, OMEGA) == 1

    def test_padded_partitions_are_canonicalized(self) -> None:
        assert extract_pieri_hermite((1,), (0,), 1, 1, G, OMEGA) == Fraction(1, 4)
        assert extract_pieri_hermite((1, 0), (), 1, 1, G, OMEGA) == Fraction(1, 4)


class TestRouting:
    def test_closed_form_is_used_when_available(self) -> None:
        params = make_params(Family.HERMITE, {"g": G, "omega": OMEGA})

        value = pieri_routed(PieriRequest(Family.HERMITE, (2,), (1,), 1, 1, params))

        assert value == Fraction(1, 2)

    def test_open_case_falls_back_to_extraction(self) -> None:
        params = make_params(Family.HERMITE, {"g": G, "omega": OMEGA})

        value = pieri_routed(PieriRequest(Family.HERMITE, (2,), (2,), 1, 1, params))

        assert value == 0

    def test_formal_parameters_are_not_extracted(self) -> None:
        params = lift(make_params(Family.HERMITE, {"g": G, "omega": OMEGA}))

        with pytest.raises(HyperbranchError) as info:
            pieri_routed(PieriRequest(Family.HERMITE, (2,), (2,), 1, 1, params))
        assert info.value.error_type is ErrorType.UNSUPPORTED_PARAMETERS

    def test_other_families_pass_through(self) -> None:
        params = make_params(Family.LAGUERRE, {"g": 1, "h": 3, "omega": 2})

        value = pieri_routed(PieriRequest(Family.LAGUERRE, (1,), (), 1, 1, params))

        assert value == Fraction(3, 4)

    def test_padded_request_is_canonicalized(self) -> None:
        params = make_params(Family.HERMITE, {"g": G, "omega": OMEGA})

        value = pieri_routed(PieriRequest(Family.HERMITE, (2, 0), (2,), 1, 1, params))

        assert value == 0


class TestShiftedLimit:
    def test_zero_g(self) -> None:
        shifted = HermiteBuildPlan.create((1, 1), 2, 0, OMEGA, g_shift=1)

        assert build_hermite_exact(shifted) == poly(2, {(1, 1): 1})

    def test_integer_g(self) -> None:
        shifted = HermiteBuildPlan.create((1, 1), 2, 1, OMEGA, g_shift=1)

        # g / (2 omega)
        assert build_hermite_exact(shifted) == poly(
            2, {(1, 1): 1, (): Fraction(1, 4)}
        )

    def test_shift_is_harmless_at_regular_g(self) -> None:
        shifted = HermiteBuildPlan.create((2, 1), 2, G, OMEGA, g_shift=1)

        assert build_hermite_exact(shifted) == build_hermite_exact(plan((2, 1), 2))

    def test_negative_shift_at_zero_g(self) -> None:
        with pytest.raises(HyperbranchError) as info:
            HermiteBuildPlan.create((1,), 1, 0, OMEGA, g_shift=-1)
        assert info.value.error_type is ErrorType.VALIDATION
