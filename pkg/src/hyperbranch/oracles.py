"""Exact moment oracles for the weights with elementary moments.

Inner products are computed as linear functionals on plain monomials: the
weight's polynomial part is multiplied out and every monomial is integrated
against a product of one-variable moment ratios. Normalization constants
cancel from every check, so only ratios to the zeroth moment appear.

* Hermite, base variable x: E[x^2k] = (2k-1)!!/(2 omega)^k.
* Laguerre, base variable y = x^2: E[y^k] = (h)_k / omega^k.
* Jacobi, base variable y = 2cos x under dx on [-pi, pi]: E[y^k] is the
  constant term of (z + 1/z)^k.
"""

from __future__ import annotations

from collections.abc import Callable
from fractions import Fraction
from math import comb, prod

from .errors import ErrorType, create_error
from .params import Family, ParamPoint
from .partitions import Partition
from .scalars import GaussRational, pochhammer
from .sympoly import ExponentMap, OneVarPoly, SymPoly, expand, multiply_maps

type Moment = Callable[[int], GaussRational]
type Recurrence = tuple[GaussRational, GaussRational]

ORACLE_FAMILIES = (Family.HERMITE, Family.LAGUERRE, Family.JACOBI)


def gaussian_moment(omega: GaussRational) -> Moment:
    def moment(k: int) -> GaussRational:
        if k % 2:
            return GaussRational(0)
        half = k // 2
        double_factorial = prod(range(1, k, 2))
        return GaussRational(double_factorial) / (2 * omega) ** half

    return moment


def gamma_moment(h: GaussRational, omega: GaussRational) -> Moment:
    def moment(k: int) -> GaussRational:
        return pochhammer(h, k) / omega**k

    return moment


def circle_moment(k: int) -> GaussRational:
    if k % 2:
        return GaussRational(0)
    return GaussRational(comb(k, k // 2))


def moment_for(params: ParamPoint) -> Moment:
    family = params.family
    if family is Family.HERMITE:
        return gaussian_moment(params["omega"])
    if family is Family.LAGUERRE:
        return gamma_moment(params["h"], params["omega"])
    if family is Family.JACOBI:
        return circle_moment
    raise create_error(
        ErrorType.UNSUPPORTED_FAMILY,
        f"{family.value} has no elementary moment oracle",
    )


def integrate(exps: ExponentMap, moment: Moment) -> GaussRational:
    """Apply the product moment functional to a plain-monomial map."""
    total = GaussRational(0)
    for exponent, coeff in exps.items():
        value = GaussRational(1)
        for power in exponent:
            value = value * moment(power)
            if not value:
                break
        total = total + value * coeff
    return total


def functional(poly: OneVarPoly, moment: Moment) -> GaussRational:
    total = GaussRational(0)
    for k, coeff in enumerate(poly.coeffs):
        if coeff:
            total = total + moment(k) * coeff
    return total


def stieltjes(
    moment: Moment, degree: int
) -> tuple[list[OneVarPoly], list[Recurrence]]:
    """Monic orthogonal polynomials p_0..p_degree and their recurrence data.

    Returns the polynomials and, for each m < degree, the pair (a_m, b_m) of
    y p_m = p_{m+1} + a_m p_m + b_m p_{m-1}.
    """
    y = OneVarPoly((GaussRational(0), GaussRational(1)))
    polys = [OneVarPoly((GaussRational(1),))]
    norms = [functional(polys[0] * polys[0], moment)]
    recurrence: list[Recurrence] = []
    for m in range(degree):
        current = polys[m]
        a = functional(y * current * current, moment) / norms[m]
        b = norms[m] / norms[m - 1] if m else GaussRational(0)
        following = y * current + current.scale(-a)
        if m:
            following = following + polys[m - 1].scale(-b)
        polys.append(following)
        norms.append(functional(following * following, moment))
        recurrence.append((a, b))
    return polys, recurrence


def _integer_or_none(value: GaussRational) -> int | None:
    if not value.is_real or value.re.denominator != 1 or value.re < 0:
        return None
    return int(value.re)


def _linear(
    nvars: int, coeffs: dict[int, Fraction], constant: Fraction
) -> ExponentMap:
    result: ExponentMap = {}
    if constant:
        result[(0,) * nvars] = GaussRational(constant)
    for index, coeff in coeffs.items():
        exponent = tuple(1 if j == index else 0 for j in range(nvars))
        result[exponent] = GaussRational(coeff)
    return result


def _power(base: ExponentMap, exponent: int, nvars: int) -> ExponentMap:
    result: ExponentMap = {(0,) * nvars: GaussRational(1)}
    for _ in range(exponent):
        result = multiply_maps(result, base)
    return result


def weight_map(params: ParamPoint, nvars: int) -> ExponentMap:
    """The polynomial part of the weight in the family's base variables.

    Raises UNSUPPORTED_PARAMETERS when the weight is not a polynomial.
    """
    family = params.family
    g = _integer_or_none(params["g"])
    if g is None:
        raise create_error(
            ErrorType.UNSUPPORTED_PARAMETERS,
            f"{family.value} oracle needs a nonnegative integer g",
        )
    quarter = Fraction(1, 4) if family is Family.JACOBI else Fraction(1)
    weight: ExponentMap = {(0,) * nvars: GaussRational(1)}
    for j in range(nvars):
        for k in range(j + 1, nvars):
            difference = _linear(nvars, {j: quarter, k: -quarter}, Fraction(0))
            weight = multiply_maps(weight, _power(difference, 2 * g, nvars))
    if family is Family.JACOBI:
        a = _integer_or_none(params["g0"] - GaussRational(Fraction(1, 2)))
        b = _integer_or_none(params["g1"] - GaussRational(Fraction(1, 2)))
        if a is None or b is None:
            raise create_error(
                ErrorType.UNSUPPORTED_PARAMETERS,
                "jacobi oracle needs g0 - 1/2 and g1 - 1/2 nonnegative integers",
            )
        for j in range(nvars):
            # sin^2(x/2) = (2 - y)/4, cos^2(x/2) = (2 + y)/4
            sine = _linear(nvars, {j: Fraction(-1, 4)}, Fraction(1, 2))
            cosine = _linear(nvars, {j: Fraction(1, 4)}, Fraction(1, 2))
            weight = multiply_maps(weight, _power(sine, a, nvars))
            weight = multiply_maps(weight, _power(cosine, b, nvars))
    return weight


def inner_product(
    f: SymPoly, mu: Partition, params: ParamPoint, weight: ExponentMap | None = None
) -> GaussRational:
    """<f, m_mu> against the family weight, relative to the zeroth moment."""
    if params.family not in ORACLE_FAMILIES:
        raise create_error(
            ErrorType.UNSUPPORTED_FAMILY,
            f"{params.family.value} has no elementary moment oracle",
        )
    if weight is None:
        weight = weight_map(params, f.nvars)
    moment = moment_for(params)
    integrand = multiply_maps(expand(f), expand(SymPoly.monomial(f.nvars, mu, 1)))
    integrand = multiply_maps(integrand, weight)
    return integrate(integrand, moment) / integrate(weight, moment)
