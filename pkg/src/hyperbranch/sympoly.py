"""Symmetric polynomials in the monomial-symmetric basis.

A ``SymPoly`` stores the coefficients of m_lambda(y_1, ..., y_n) where the
y_j are the family's base variables (2cos x, x^2 or x). Products and merges
go through plain exponent maps: dicts from exponent tuples to coefficients.
"""

from __future__ import annotations

from collections import Counter
from collections.abc import Iterable, Mapping
from math import factorial, prod
from typing import Any

from sympy.utilities.iterables import multiset_permutations

from .errors import ErrorType, create_error
from .params import Family, ParamPoint
from .partitions import Partition, make_partition, pad, size
from .scalars import IMAG_UNIT, GaussRational

type ExponentMap = dict[tuple[int, ...], Any]


class SymPoly:
    """Coefficients of m_lambda in a fixed number of variables."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[Partition, Any]) -> None:
        merged: dict[Partition, Any] = {}
        for key, coeff in terms.items():
            lam = make_partition(key)
            if len(lam) > nvars:
                raise create_error(
                    ErrorType.INVALID_PARTITION,
                    f"m_{list(lam)} does not exist in {nvars} variables",
                )
            merged[lam] = merged[lam] + coeff if lam in merged else coeff
        self.nvars = nvars
        self.terms: dict[Partition, Any] = {
            lam: coeff for lam, coeff in merged.items() if coeff
        }

    @classmethod
    def constant(cls, nvars: int, value: Any) -> SymPoly:
        return cls(nvars, {(): value})

    @classmethod
    def monomial(cls, nvars: int, lam: Partition, coeff: Any) -> SymPoly:
        return cls(nvars, {make_partition(lam): coeff})

    def coefficient(self, lam: Partition) -> Any:
        return self.terms.get(make_partition(lam), 0)

    def is_zero(self) -> bool:
        return not self.terms

    def support(self) -> list[Partition]:
        return list(self.terms)

    def __add__(self, other: SymPoly) -> SymPoly:
        _same_nvars(self, other)
        merged = dict(self.terms)
        for lam, coeff in other.terms.items():
            merged[lam] = merged[lam] + coeff if lam in merged else coeff
        return SymPoly(self.nvars, merged)

    def __sub__(self, other: SymPoly) -> SymPoly:
        return self + other.scale(-1)

    def __neg__(self) -> SymPoly:
        return self.scale(-1)

    def scale(self, factor: Any) -> SymPoly:
        return SymPoly(
            self.nvars, {lam: coeff * factor for lam, coeff in self.terms.items()}
        )

    def map_coefficients(self, func: Any) -> SymPoly:
        return SymPoly(
            self.nvars, {lam: func(coeff) for lam, coeff in self.terms.items()}
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SymPoly):
            return NotImplemented
        return self.nvars == other.nvars and (self - other).is_zero()

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        body = " + ".join(f"({coeff})*m{list(lam)}" for lam, coeff in self.ordered())
        return f"SymPoly(nvars={self.nvars}, {body or '0'})"

    def ordered(self) -> list[tuple[Partition, Any]]:
        """Terms from the top down: larger size first, then reverse lex."""
        return sorted(
            self.terms.items(), key=lambda item: (-size(item[0]), _negated(item[0]))
        )

    def to_json(self) -> dict[str, Any]:
        return {
            "nvars": self.nvars,
            "terms": [
                {"mu": list(lam), "coeff": GaussRational.parse(coeff).to_json()}
                for lam, coeff in self.ordered()
            ],
        }


def _negated(lam: Partition) -> tuple[int, ...]:
    return tuple(-part for part in lam)


def _same_nvars(f: SymPoly, g: SymPoly) -> None:
    if f.nvars != g.nvars:
        raise create_error(
            ErrorType.VALIDATION,
            f"variable counts differ: {f.nvars} and {g.nvars}",
        )


def orbit(lam: Partition, nvars: int) -> Iterable[tuple[int, ...]]:
    """All distinct rearrangements of lam padded to nvars entries."""
    for perm in multiset_permutations(list(pad(lam, nvars))):
        yield tuple(perm)


def orbit_size(exponents: Iterable[int]) -> int:
    values = list(exponents)
    return factorial(len(values)) // prod(
        factorial(count) for count in Counter(values).values()
    )


def expand(f: SymPoly) -> ExponentMap:
    """Plain-monomial expansion of f."""
    result: ExponentMap = {}
    for lam, coeff in f.terms.items():
        for exponent in orbit(lam, f.nvars):
            result[exponent] = coeff
    return result


def add_into(target: ExponentMap, source: ExponentMap, factor: Any = 1) -> None:
    for exponent, coeff in source.items():
        value = coeff * factor
        if exponent in target:
            target[exponent] = target[exponent] + value
        else:
            target[exponent] = value


def multiply_maps(a: ExponentMap, b: ExponentMap) -> ExponentMap:
    result: ExponentMap = {}
    for exp_a, coeff_a in a.items():
        for exp_b, coeff_b in b.items():
            key = tuple(x + y for x, y in zip(exp_a, exp_b, strict=True))
            value = coeff_a * coeff_b
            result[key] = result[key] + value if key in result else value
    return prune(result)


def prune(exps: ExponentMap) -> ExponentMap:
    return {exponent: coeff for exponent, coeff in exps.items() if coeff}


def collect_mbasis(exps: ExponentMap, nvars: int) -> SymPoly:
    """Recollect a symmetric exponent map into the m-basis.

    Raises NOT_SYMMETRIC when some orbit is incomplete or carries unequal
    coefficients.
    """
    groups: dict[tuple[int, ...], list[tuple[tuple[int, ...], Any]]] = {}
    for exponent, coeff in prune(exps).items():
        if len(exponent) != nvars:
            raise create_error(
                ErrorType.VALIDATION,
                f"exponent {exponent} does not have {nvars} entries",
            )
        key = tuple(sorted(exponent, reverse=True))
        groups.setdefault(key, []).append((exponent, coeff))
    terms: dict[Partition, Any] = {}
    for key, members in groups.items():
        leading = members[0][1]
        if len(members) != orbit_size(key) or any(
            coeff != leading for _, coeff in members
        ):
            raise create_error(
                ErrorType.NOT_SYMMETRIC,
                f"exponent map is not symmetric on the orbit of {list(key)}",
            )
        terms[make_partition(key)] = leading
    return SymPoly(nvars, terms)


def mbasis_mul(f: SymPoly, g: SymPoly) -> SymPoly:
    """Product of two symmetric polynomials.

    Only dominant (weakly decreasing) exponents of the product are kept, which
    is enough to read off m-basis coefficients.
    """
    _same_nvars(f, g)
    left = expand(f)
    right = expand(g)
    terms: dict[Partition, Any] = {}
    for exp_a, coeff_a in left.items():
        for exp_b, coeff_b in right.items():
            key = tuple(x + y for x, y in zip(exp_a, exp_b, strict=True))
            if any(x < y for x, y in zip(key, key[1:], strict=False)):
                continue
            lam = make_partition(key)
            value = coeff_a * coeff_b
            terms[lam] = terms[lam] + value if lam in terms else value
    return SymPoly(f.nvars, terms)


def evaluate(f: SymPoly, point: list[Any]) -> Any:
    if len(point) != f.nvars:
        raise create_error(
            ErrorType.VALIDATION,
            f"point has {len(point)} coordinates, expected {f.nvars}",
        )
    total: Any = 0
    for exponent, coeff in expand(f).items():
        term = coeff
        for value, power in zip(point, exponent, strict=True):
            if power:
                term = term * value**power
        total = total + term
    return total


class OneVarPoly:
    """A polynomial in the family's base variable y, lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Any]) -> None:
        values = list(coeffs)
        while values and not values[-1]:
            values.pop()
        self.coeffs: tuple[Any, ...] = tuple(values)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def coefficient(self, k: int) -> Any:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __add__(self, other: OneVarPoly) -> OneVarPoly:
        length = max(len(self.coeffs), len(other.coeffs))
        return OneVarPoly(
            self.coefficient(k) + other.coefficient(k) for k in range(length)
        )

    def __mul__(self, other: OneVarPoly) -> OneVarPoly:
        if not self.coeffs or not other.coeffs:
            return OneVarPoly(())
        result: list[Any] = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                result[i + j] = result[i + j] + a * b
        return OneVarPoly(result)

    def scale(self, factor: Any) -> OneVarPoly:
        return OneVarPoly(coeff * factor for coeff in self.coeffs)

    def evaluate(self, y: Any) -> Any:
        total: Any = 0
        for coeff in reversed(self.coeffs):
            total = total * y + coeff
        return total

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, OneVarPoly):
            return NotImplemented
        length = max(len(self.coeffs), len(other.coeffs))
        return all(
            self.coefficient(k) == other.coefficient(k) for k in range(length)
        )

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"OneVarPoly({list(self.coeffs)})"

    def to_json(self) -> list[dict[str, str]]:
        return [GaussRational.parse(coeff).to_json() for coeff in self.coeffs]


def onevar_basis(family: Family, k: int, params: ParamPoint) -> OneVarPoly:
    """The k-th element of the family's one-variable branching basis in y."""
    one = params.one
    result = OneVarPoly((one,))
    if family in (Family.AW, Family.WHITTAKER):
        q, t0 = params["q"], params["t0"]
        shift = one
        for _ in range(k):
            root = shift * t0 + 1 / (shift * t0)
            result = result * OneVarPoly((-root, one))
            shift = shift * q
    elif family is Family.WILSON:
        g0 = params["g0"]
        for j in range(k):
            result = result * OneVarPoly(((g0 + j) * (g0 + j), one))
    elif family is Family.CHAHN:
        g0 = params["g0"]
        for j in range(k):
            result = result * OneVarPoly((g0 + j, one * IMAG_UNIT))
    elif family is Family.JACOBI:
        factor = OneVarPoly((one / 2, -one / 4))
        for _ in range(k):
            result = result * factor
    else:
        result = OneVarPoly([0] * k + [one])
    return result


def merge_with_univariate(f: SymPoly, u: OneVarPoly) -> ExponentMap:
    """Exponent map of f(y_1..y_n) * u(y_{n+1}); not symmetric on its own."""
    result: ExponentMap = {}
    for exponent, coeff in expand(f).items():
        for k, uk in enumerate(u.coeffs):
            if uk:
                result[(*exponent, k)] = coeff * uk
    return result


def elementary(nvars: int, r: int, coeff: Any) -> SymPoly:
    """coeff * e_r(y_1, ..., y_n) = coeff * m_(1^r)."""
    if r > nvars:
        return SymPoly(nvars, {})
    return SymPoly(nvars, {(1,) * r: coeff})
