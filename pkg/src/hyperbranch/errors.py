"""Error types for hyperbranch."""

from collections.abc import Callable
from enum import Enum
from functools import wraps


class ErrorType(str, Enum):
    """Error type enumeration."""

    NON_GENERIC = "non_generic_parameters"
    POLE_AT_ZERO = "pole_at_zero"
    NONZERO_IMAGINARY = "nonzero_imaginary"
    UNSUPPORTED_FAMILY = "unsupported_family"
    HERMITE_GENERAL_CASE = "hermite_general_case"
    UNSUPPORTED_PARAMETERS = "unsupported_parameters"
    NOT_SYMMETRIC = "not_symmetric"
    INVALID_PARTITION = "invalid_partition"
    VALIDATION = "validation_error"


class HyperbranchError(Exception):
    """Error raised by the polynomial constructions and checks."""

    def __init__(
        self,
        error_type: ErrorType,
        message: str,
        cause: Exception | None = None,
    ) -> None:
        self.error_type = error_type
        self.message = message
        self.cause = cause
        super().__init__(message)


def create_error(
    error_type: ErrorType, message: str, cause: Exception | None = None
) -> HyperbranchError:
    """Create a HyperbranchError with the given type and message."""
    return HyperbranchError(error_type, message, cause)


def generic_only[**P, R](func: Callable[P, R]) -> Callable[P, R]:
    """Report an exact zero denominator as non-generic parameters."""

    @wraps(func)
    def wrapper(*args: P.args, **kwargs: P.kwargs) -> R:
        try:
            return func(*args, **kwargs)
        except ZeroDivisionError as e:
            raise create_error(
                ErrorType.NON_GENERIC,
                f"{func.__name__}: a denominator vanishes at this parameter point",
                e,
            ) from e

    return wrapper
