"""Exact coefficient arithmetic.

Two scalar types flow through every formula in the package:

* ``GaussRational``: an element of sympy's Gaussian rational domain ``QQ_I``.
* ``LimitScalar``: an element of the sympy fraction field ``QQ_I(beta)``, used
  to take degeneration limits beta -> 0 exactly. Numerator and denominator are
  kept coprime over ``ZZ_I`` after every operation.

Both support ``+ - * / **`` with each other and with ``int``/``Fraction``,
truth testing (nonzero), ``real_part`` and ``imag_part``. Formula code is
written once against that shared surface.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt
from typing import Any

from sympy import QQ, QQ_I
from sympy.polys.fields import field

from .errors import ErrorType, create_error

type Rational = int | Fraction


def _qq(value: Rational) -> Any:
    value = Fraction(value)
    return QQ(value.numerator, value.denominator)


def _to_fraction(value: Any) -> Fraction:
    return Fraction(int(value.numerator), int(value.denominator))


def _conjugate_element(value: Any) -> Any:
    return QQ_I(value.x, -value.y)


class GaussRational:
    """An exact element of Q(i), backed by a ``QQ_I`` element."""

    __slots__ = ("value",)

    def __init__(self, re: Rational = 0, im: Rational = 0) -> None:
        self.value = QQ_I(_qq(re), _qq(im))

    @classmethod
    def wrap(cls, value: Any) -> GaussRational:
        result = cls.__new__(cls)
        result.value = value
        return result

    @classmethod
    def parse(cls, value: Any) -> GaussRational:
        """Read "p/q", an int, or {"re": "p/q", "im": "r/s"}."""
        try:
            if isinstance(value, GaussRational):
                return value
            if isinstance(value, dict):
                re = Fraction(value.get("re", "0"))
                return cls(re, Fraction(value.get("im", "0")))
            if isinstance(value, bool):
                raise TypeError("booleans are not rationals")
            if isinstance(value, int | Fraction):
                return cls(value)
            if isinstance(value, str):
                return cls(Fraction(value.strip()))
        except (ValueError, TypeError, ZeroDivisionError) as e:
            raise create_error(
                ErrorType.VALIDATION, f"not an exact rational: {value!r}", e
            ) from e
        raise create_error(ErrorType.VALIDATION, f"not an exact rational: {value!r}")

    @property
    def re(self) -> Fraction:
        return _to_fraction(self.value.x)

    @property
    def im(self) -> Fraction:
        return _to_fraction(self.value.y)

    def to_json(self) -> dict[str, str]:
        return {"re": str(self.re), "im": str(self.im)}

    @property
    def is_real(self) -> bool:
        return not self.value.y

    def real_part(self) -> GaussRational:
        return GaussRational.wrap(QQ_I(self.value.x, QQ.zero))

    def imag_part(self) -> GaussRational:
        return GaussRational.wrap(QQ_I(self.value.y, QQ.zero))

    def conjugate(self) -> GaussRational:
        return GaussRational.wrap(_conjugate_element(self.value))

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __bool__(self) -> bool:
        return bool(self.value)

    def __eq__(self, other: object) -> bool:
        value = _coerce(other)
        if value is None:
            return NotImplemented
        return self.value == value

    def __hash__(self) -> int:
        if self.is_real:
            return hash(self.re)
        return hash((self.re, self.im))

    def __repr__(self) -> str:
        return f"GaussRational({self.re}, {self.im})"

    def __str__(self) -> str:
        if self.is_real:
            return str(self.re)
        return f"{self.re}+{self.im}i"

    def __neg__(self) -> GaussRational:
        return GaussRational.wrap(-self.value)

    def __pos__(self) -> GaussRational:
        return self

    def __add__(self, other: Any) -> GaussRational:
        value = _coerce(other)
        if value is None:
            return NotImplemented
        return GaussRational.wrap(self.value + value)

    __radd__ = __add__

    def __sub__(self, other: Any) -> GaussRational:
        value = _coerce(other)
        if value is None:
            return NotImplemented
        return GaussRational.wrap(self.value - value)

    def __rsub__(self, other: Any) -> GaussRational:
        value = _coerce(other)
        if value is None:
            return NotImplemented
        return GaussRational.wrap(value - self.value)

    def __mul__(self, other: Any) -> GaussRational:
        value = _coerce(other)
        if value is None:
            return NotImplemented
        return GaussRational.wrap(self.value * value)

    __rmul__ = __mul__

    def __truediv__(self, other: Any) -> GaussRational:
        value = _coerce(other)
        if value is None:
            return NotImplemented
        if not value:
            raise ZeroDivisionError("division by zero in Q(i)")
        return GaussRational.wrap(self.value / value)

    def __rtruediv__(self, other: Any) -> GaussRational:
        value = _coerce(other)
        if value is None:
            return NotImplemented
        return GaussRational.wrap(value) / self

    def reciprocal(self) -> GaussRational:
        return 1 / self

    def __pow__(self, exponent: int) -> GaussRational:
        if exponent == 0:
            return GaussRational.wrap(QQ_I.one)
        if exponent < 0:
            return self.reciprocal() ** (-exponent)
        return GaussRational.wrap(self.value**exponent)


IMAG_UNIT = GaussRational(0, 1)


def _coerce(value: Any) -> Any:
    """The ``QQ_I`` element for value, or None for foreign types."""
    if isinstance(value, GaussRational):
        return value.value
    if isinstance(value, int | Fraction) and not isinstance(value, bool):
        return QQ_I(_qq(value), QQ.zero)
    return None


_FIELD, _BETA = field("beta", QQ_I)


def _conjugate_poly(poly: Any) -> Any:
    return poly.ring.from_dict(
        {monom: _conjugate_element(coeff) for monom, coeff in poly.terms()}
    )


def _poly_token(poly: Any) -> str:
    return ",".join(
        f"{monom[0]}:{coeff.x}:{coeff.y}" for monom, coeff in sorted(poly.terms())
    )


class LimitScalar:
    """A rational function of beta over Q(i).

    The value is one element of the sympy fraction field ``QQ_I(beta)``, so a
    product is a single field multiplication and every cancellation is a gcd
    over the Gaussian integers. Real and imaginary parts treat beta as real.
    """

    __slots__ = ("value",)

    def __init__(self, value: Any) -> None:
        self.value = value

    @classmethod
    def constant(cls, value: GaussRational | Rational) -> LimitScalar:
        return cls(_FIELD(GaussRational.parse(value).value))

    @classmethod
    def beta(cls) -> LimitScalar:
        """The formal degeneration variable."""
        return cls(_BETA)

    def conjugate(self) -> LimitScalar:
        numer, denom = self.value.numer, self.value.denom
        return LimitScalar(_FIELD.new(_conjugate_poly(numer), _conjugate_poly(denom)))

    def real_part(self) -> LimitScalar:
        return (self + self.conjugate()) / 2

    def imag_part(self) -> LimitScalar:
        return (self - self.conjugate()) / (2 * IMAG_UNIT)

    def limit_at_zero(self) -> GaussRational:
        """Value at beta = 0 of the reduced rational function."""
        if not self.value:
            return GaussRational()
        numer, denom = self.value.numer, self.value.denom
        low_numer = min(monom[0] for monom in numer.keys())
        low_denom = min(monom[0] for monom in denom.keys())
        if low_numer < low_denom:
            raise create_error(
                ErrorType.POLE_AT_ZERO,
                f"{self!r} has a pole of order {low_denom - low_numer} at beta = 0",
            )
        if low_numer > low_denom:
            return GaussRational()
        return GaussRational.wrap(numer[(low_numer,)] / denom[(low_denom,)])

    def __bool__(self) -> bool:
        return bool(self.value)

    def __eq__(self, other: object) -> bool:
        value = _coerce_limit(other)
        if value is None:
            return NotImplemented
        return not (self.value - value)

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"LimitScalar({self.cache_token()})"

    def cache_token(self) -> str:
        return f"{_poly_token(self.value.numer)}/{_poly_token(self.value.denom)}"

    def __neg__(self) -> LimitScalar:
        return LimitScalar(-self.value)

    def __add__(self, other: Any) -> LimitScalar:
        value = _coerce_limit(other)
        if value is None:
            return NotImplemented
        return LimitScalar(self.value + value)

    __radd__ = __add__

    def __sub__(self, other: Any) -> LimitScalar:
        value = _coerce_limit(other)
        if value is None:
            return NotImplemented
        return LimitScalar(self.value - value)

    def __rsub__(self, other: Any) -> LimitScalar:
        value = _coerce_limit(other)
        if value is None:
            return NotImplemented
        return LimitScalar(value - self.value)

    def __mul__(self, other: Any) -> LimitScalar:
        value = _coerce_limit(other)
        if value is None:
            return NotImplemented
        return LimitScalar(self.value * value)

    __rmul__ = __mul__

    def __truediv__(self, other: Any) -> LimitScalar:
        value = _coerce_limit(other)
        if value is None:
            return NotImplemented
        if not value:
            raise ZeroDivisionError("division by zero in Q(i)(beta)")
        return LimitScalar(self.value / value)

    def __rtruediv__(self, other: Any) -> LimitScalar:
        value = _coerce_limit(other)
        if value is None:
            return NotImplemented
        return LimitScalar(value) / self

    def reciprocal(self) -> LimitScalar:
        return 1 / self

    def __pow__(self, exponent: int) -> LimitScalar:
        if exponent < 0:
            return self.reciprocal() ** (-exponent)
        return LimitScalar(self.value**exponent)


def _coerce_limit(value: Any) -> Any:
    """The ``QQ_I(beta)`` element for value, or None for foreign types."""
    if isinstance(value, LimitScalar):
        return value.value
    ground = _coerce(value)
    if ground is None:
        return None
    return _FIELD(ground)


def limit_at_zero(value: LimitScalar) -> GaussRational:
    """Value of the reduced rational function at beta = 0."""
    return value.limit_at_zero()


type Scalar = GaussRational | LimitScalar


def one_like(value: Any) -> Any:
    """The multiplicative identity of value's field."""
    return value**0


def pochhammer(a: Any, k: int) -> Any:
    """Rising factorial (a)_k = a (a+1) ... (a+k-1)."""
    result = one_like(a)
    for j in range(k):
        result = result * (a + j)
    return result


def q_pochhammer(a: Any, q: Any, k: int) -> Any:
    """(a; q)_k = (1 - a)(1 - a q) ... (1 - a q^{k-1})."""
    result = one_like(a)
    term = a
    for _ in range(k):
        result = result * (1 - term)
        term = term * q
    return result


def to_complex(value: GaussRational) -> complex:
    return complex(value)


def rational_sqrt(value: GaussRational) -> Fraction | None:
    """The positive rational square root of value, if it has one."""
    if not value.is_real or value.re <= 0:
        return None
    numer, denom = value.re.numerator, value.re.denominator
    root_n, root_d = isqrt(numer), isqrt(denom)
    if root_n * root_n != numer or root_d * root_d != denom:
        return None
    return Fraction(root_n, root_d)
