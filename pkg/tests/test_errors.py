import pytest

from hyperbranch.errors import ErrorType, HyperbranchError, create_error, generic_only


def test_create_error_preserves_cause() -> None:
    cause = ValueError("boom")

    error = create_error(ErrorType.VALIDATION, "Bad parameters", cause)

    assert error.error_type is ErrorType.VALIDATION
    assert error.message == "Bad parameters"
    assert error.cause is cause
    assert str(error) == "Bad parameters"


def test_error_type_values_are_stable() -> None:
    assert ErrorType.NON_GENERIC.value == "non_generic_parameters"
    assert ErrorType.POLE_AT_ZERO.value == "pole_at_zero"
    assert ErrorType.HERMITE_GENERAL_CASE.value == "hermite_general_case"


def test_generic_only_maps_zero_division() -> None:
    @generic_only
    def ratio(a: int, b: int) -> float:
        return a / b

    assert ratio(6, 3) == 2

    with pytest.raises(HyperbranchError) as info:
        ratio(1, 0)

    assert info.value.error_type is ErrorType.NON_GENERIC
    assert isinstance(info.value.cause, ZeroDivisionError)
    assert "ratio" in info.value.message


def test_generic_only_leaves_other_errors_alone() -> None:
    @generic_only
    def fail() -> None:
        raise create_error(ErrorType.UNSUPPORTED_FAMILY, "nope")

    with pytest.raises(HyperbranchError) as info:
        fail()

    assert info.value.error_type is ErrorType.UNSUPPORTED_FAMILY
