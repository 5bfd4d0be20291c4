"""Identity and oracle checks, and the suite runner that drives them.

Every check returns a ``CheckReport``. Identity checks expand both sides into
exact exponent maps and report the first monomial on which they differ.
``perturb=True`` flips the sign of one right-hand contribution; a check that
still passes under it is vacuous.
"""

from __future__ import annotations

import asyncio
import random
import time
from collections.abc import Callable, Iterable, Mapping
from dataclasses import dataclass
from fractions import Fraction
from functools import partial, wraps
from typing import Any

import numpy as np

from .branching import branch_coeffs, build, build_regularized, dual_params
from .config import HyperbranchConfig
from .degeneration import (
    CHAIN_FAMILIES,
    DEFAULT_STEPS,
    Chain,
    TrendResult,
    assess_trend,
    random_point,
    random_target,
    run_chain,
)
from .errors import ErrorType, HyperbranchError, create_error, generic_only
from .hermite_limit import (
    HermiteBuildPlan,
    build_hermite_exact,
    expand_in_hermite,
    hermite_pieri_expansion,
    pieri_routed,
)
from .logging import with_component
from .oracles import inner_product, moment_for, stieltjes, weight_map
from .params import (
    REAL_FAMILIES,
    Family,
    ParamPoint,
    make_params,
    point_rng,
    random_params,
    random_rational,
)
from .partitions import (
    Partition,
    complement,
    conjugate,
    dominance_leq,
    enumerate_subpartitions,
    index_sets,
    is_horizontal_strip,
    make_partition,
    pad,
    partitions_up_to,
    precedes,
    preceding_partitions,
    proximate_partitions,
    proximity,
    size,
)
from .pieri import PieriRequest, generator_er, pieri_coeff
from .scalars import (
    IMAG_UNIT,
    GaussRational,
    LimitScalar,
    pochhammer,
    q_pochhammer,
    rational_sqrt,
)
from .sympoly import (
    ExponentMap,
    OneVarPoly,
    SymPoly,
    add_into,
    collect_mbasis,
    expand,
    mbasis_mul,
    merge_with_univariate,
    multiply_maps,
    onevar_basis,
    prune,
)

logger = with_component("verify")

PASS = "pass"
FAIL = "fail"
SKIP = "skip"
ERROR = "error"

CAUCHY_FAMILIES = (
    Family.AW,
    Family.WILSON,
    Family.CHAHN,
    Family.JACOBI,
    Family.LAGUERRE,
    Family.HERMITE,
)
COLUMN_ROW_FAMILIES = CAUCHY_FAMILIES
# whittaker polynomials live at t = 0 and their Pieri formulas at q = 0
PIERI_FAMILIES = CAUCHY_FAMILIES
RECURRENCE_FAMILIES = (Family.HERMITE, Family.LAGUERRE)
JACOBI_ORACLE_TRIPLES = (
    (Fraction(1), Fraction(1, 2), Fraction(1, 2)),
    (Fraction(1), Fraction(3, 2), Fraction(1, 2)),
    (Fraction(2), Fraction(1, 2), Fraction(3, 2)),
)
WHITTAKER_STEPS = tuple(Fraction(1, 2**s) for s in range(6, 11))
SUITES = (
    "cauchy",
    "pieri",
    "construction",
    "recurrence",
    "orthogonality",
    "hermite",
    "product",
    "column-row",
    "degeneration",
    "whittaker",
)


@dataclass
class CheckReport:
    """Outcome of one check at one parameter point."""

    check: str
    family: str
    sizes: dict[str, Any]
    status: str = PASS
    params: dict[str, Any] | None = None
    seed: int | None = None
    point: int | None = None
    counterexample: dict[str, Any] | None = None
    detail: str = ""
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def to_json(self, *, timings: bool = False) -> dict[str, Any]:
        payload: dict[str, Any] = {
            "check": self.check,
            "family": self.family,
            "sizes": self.sizes,
            "status": self.status,
            "seed": self.seed,
            "point": self.point,
            "params": self.params,
            "counterexample": self.counterexample,
            "detail": self.detail,
        }
        if timings:
            payload["elapsed"] = round(self.elapsed, 6)
        return payload


def timed(func: Callable[..., CheckReport]) -> Callable[..., CheckReport]:
    """Record elapsed time on the returned report and log the outcome."""

    @wraps(func)
    def wrapper(*args: Any, **kwargs: Any) -> CheckReport:
        start = time.perf_counter()
        report = func(*args, **kwargs)
        report.elapsed = time.perf_counter() - start
        logger.info(
            "Check finished",
            check=report.check,
            family=report.family,
            status=report.status,
            elapsed=f"{report.elapsed:.3f}s",
        )
        return report

    return wrapper


def _json_scalar(value: Any) -> Any:
    return GaussRational.parse(value).to_json()


def first_difference(
    lhs: Mapping[tuple[int, ...], Any], rhs: Mapping[tuple[int, ...], Any]
) -> dict[str, Any] | None:
    """The highest key on which two coefficient maps disagree, or None."""
    zero = GaussRational(0)
    for key in sorted(set(lhs) | set(rhs), reverse=True):
        left, right = lhs.get(key, zero), rhs.get(key, zero)
        if left != right:
            return {
                "term": list(key),
                "lhs": _json_scalar(left),
                "rhs": _json_scalar(right),
            }
    return None


def _report(
    check: str,
    family: Family,
    sizes: dict[str, Any],
    params: ParamPoint | None,
    difference: dict[str, Any] | None,
    detail: str = "",
) -> CheckReport:
    return CheckReport(
        check,
        family.value,
        sizes,
        status=FAIL if difference else PASS,
        params=None if params is None or params.is_formal else params.to_json(),
        counterexample=difference,
        detail=detail,
    )


def _require(params: ParamPoint, allowed: Iterable[Family], check: str) -> None:
    if params.family not in tuple(allowed):
        raise create_error(
            ErrorType.UNSUPPORTED_FAMILY,
            f"{check} is not available for {params.family.value}",
        )


def _unit(nvars: int, index: int) -> tuple[int, ...]:
    return tuple(1 if j == index else 0 for j in range(nvars))


def _difference_product(m: int, n: int, scale: Any = 1) -> ExponentMap:
    """scale * prod_{j<m, k<n} (y_j - w_k) over m + n base variables."""
    nvars = m + n
    result: ExponentMap = {(0,) * nvars: GaussRational.parse(scale)}
    for j in range(m):
        for k in range(n):
            factor = {
                _unit(nvars, j): GaussRational(1),
                _unit(nvars, m + k): GaussRational(-1),
            }
            result = multiply_maps(result, factor)
    return result


def _tensor(left: ExponentMap, right: ExponentMap) -> ExponentMap:
    return {
        (*exp_a, *exp_b): coeff_a * coeff_b
        for exp_a, coeff_a in left.items()
        for exp_b, coeff_b in right.items()
    }


def _kernel_constants(params: ParamPoint) -> tuple[Any, Any]:
    """Base of the (c)^{mn-|lam|} prefactor and the dual-variable rescaling."""
    one = params.one
    if params.family is Family.WILSON:
        g = params["g"]
        return -(g * g), one / (g * g)
    if params.family is Family.CHAHN:
        g = params["g"]
        return -g, one / g
    return -one, one


def _rescaled(poly: SymPoly, scale: Any) -> SymPoly:
    """poly with every base variable multiplied by scale."""
    return SymPoly(
        poly.nvars,
        {kappa: coeff * scale ** size(kappa) for kappa, coeff in poly.terms.items()},
    )


@timed
@generic_only
def cauchy_check(
    family: Family, m: int, n: int, params: ParamPoint, *, perturb: bool = False
) -> CheckReport:
    """prod (y_j - w_k) against the sum of dual products over lam in n^m."""
    _require(params, CAUCHY_FAMILIES, "cauchy")
    base, scale = _kernel_constants(params)
    dual = dual_params(params)
    lhs = _difference_product(m, n)
    rhs: ExponentMap = {}
    for index, lam in enumerate(enumerate_subpartitions(m, n)):
        kappa = complement(m, n, conjugate(lam))
        left = build(family, lam, m, params)
        right = _rescaled(build(family, kappa, n, dual), scale)
        coeff = base ** (m * n - size(lam))
        if perturb and index == 0:
            coeff = -coeff
        add_into(rhs, _tensor(expand(left), expand(right)), coeff)
    return _report(
        "cauchy",
        family,
        {"m": m, "n": n},
        params,
        first_difference(lhs, prune(rhs)),
    )


def column_row_basis(params: ParamPoint, k: int) -> OneVarPoly:
    """The one-variable basis on the dual side of the column-row identity."""
    family = params.family
    one = params.one
    if family is Family.AW:
        return onevar_basis(family, k, params.replace(q=params["t"]))
    if family is Family.WILSON:
        result = OneVarPoly((one,))
        for j in range(k):
            shift = params["g0"] + params["g"] * j
            result = result * OneVarPoly((shift * shift, one))
        return result
    if family is Family.CHAHN:
        result = OneVarPoly((one,))
        for j in range(k):
            result = result * OneVarPoly((params["g0"] + params["g"] * j, IMAG_UNIT))
        return result
    if family is Family.JACOBI:
        return onevar_basis(family, k, params)
    return OneVarPoly([0] * k + [one])


def _column_row_constants(params: ParamPoint, m: int, r: int) -> tuple[Any, Any]:
    """(scale of the product side, coefficient of E_r times basis_{m-r})."""
    one = params.one
    family = params.family
    if family is Family.WILSON:
        return one, one * (-1) ** m
    if family is Family.CHAHN:
        return one, IMAG_UNIT**m
    if family is Family.JACOBI:
        return one * Fraction(-1, 4) ** m, one * (-1) ** m
    return one, one * (-1) ** (m - r)


@timed
@generic_only
def column_row_check(
    family: Family, m: int, params: ParamPoint, *, perturb: bool = False
) -> CheckReport:
    """prod_j (y_j - v) against sum_r E_r(y) basis_{m-r}(v)."""
    _require(params, COLUMN_ROW_FAMILIES, "column-row")
    scale, _ = _column_row_constants(params, m, 0)
    lhs = _difference_product(m, 1, scale)
    rhs: ExponentMap = {}
    for r in range(m + 1):
        _, coeff = _column_row_constants(params, m, r)
        if perturb and r == 0:
            coeff = -coeff
        generator = generator_er(family, r, m, params)
        basis = column_row_basis(params, m - r)
        add_into(rhs, merge_with_univariate(generator, basis), coeff)
    return _report(
        "column-row", family, {"m": m}, params, first_difference(lhs, prune(rhs))
    )


@timed
@generic_only
def pieri_closure_check(
    family: Family,
    n: int,
    lam: Partition,
    r: int,
    params: ParamPoint,
    *,
    perturb: bool = False,
) -> CheckReport:
    """E_r * P_lam minus the Pieri expansion is the zero polynomial."""
    _require(params, PIERI_FAMILIES, "pieri")
    lhs = mbasis_mul(generator_er(family, r, n, params), build(family, lam, n, params))
    rhs = SymPoly(n, {})
    flipped = not perturb
    for mu in proximate_partitions(lam, r, n):
        coeff = pieri_routed(PieriRequest(family, lam, mu, n, r, params))
        if not coeff:
            continue
        if not flipped:
            coeff, flipped = -coeff, True
        rhs = rhs + build(family, mu, n, params).scale(coeff)
    return _report(
        "pieri",
        family,
        {"n": n, "lambda": list(lam), "r": r},
        params,
        first_difference(lhs.terms, rhs.terms),
    )


@timed
@generic_only
def recurrence_check(
    family: Family, max_degree: int, params: ParamPoint, *, perturb: bool = False
) -> CheckReport:
    """One-variable Pieri data and builds against Gram-Schmidt from moments."""
    _require(params, RECURRENCE_FAMILIES, "recurrence")
    polys, recurrence = stieltjes(moment_for(params), max_degree + 1)
    one = params.one
    sizes = {"max_degree": max_degree}
    for m in range(max_degree + 1):
        lam = make_partition((m,))
        built = build(family, lam, 1, params)
        expected = {
            make_partition((k,)): coeff
            for k, coeff in enumerate(polys[m].coeffs)
            if coeff
        }
        difference = first_difference(built.terms, expected)
        if difference:
            difference["degree"] = m
            return _report("recurrence", family, sizes, params, difference, "build")
        a, b = recurrence[m]
        if perturb and m == max_degree:
            b = -b if b else one
        targets = [(make_partition((m + 1,)), one), (lam, a)]
        if m:
            targets.append((make_partition((m - 1,)), b))
        for mu, value in targets:
            coeff = pieri_routed(PieriRequest(family, lam, mu, 1, 1, params))
            if coeff != value:
                return _report(
                    "recurrence",
                    family,
                    sizes,
                    params,
                    {
                        "term": [m, mu[0] if mu else 0],
                        "lhs": _json_scalar(coeff),
                        "rhs": _json_scalar(value),
                    },
                    "pieri",
                )
    return _report("recurrence", family, sizes, params, None)


def _oracle_build(lam: Partition, n: int, params: ParamPoint) -> SymPoly:
    try:
        return build(params.family, lam, n, params)
    except HyperbranchError as e:
        recoverable = (ErrorType.NON_GENERIC, ErrorType.UNSUPPORTED_PARAMETERS)
        if e.error_type not in recoverable:
            raise
        logger.debug(
            "Falling back to a regularized build",
            family=params.family.value,
            lam=list(lam),
            reason=e.error_type.value,
        )
    if params.family is Family.HERMITE:
        g, omega = _hermite_values(params)
        plan = HermiteBuildPlan.create(lam, n, g, omega, g_shift=1)
        return build_hermite_exact(plan)
    return build_regularized(lam, n, params)


@timed
def orthogonality_oracle(
    family: Family,
    n: int,
    lam: Partition,
    params: ParamPoint,
    *,
    perturb: bool = False,
) -> CheckReport:
    """P_lam is monic and <P_lam, M_mu> vanishes for every mu below lam in dominance."""
    weight = weight_map(params, n)
    poly = _oracle_build(lam, n, params)
    if perturb:
        lower = [mu for mu in poly.support() if mu != lam]
        if lower:
            target = min(lower)
            poly = poly - SymPoly.monomial(n, target, 2 * poly.terms[target])
        else:
            poly = poly + SymPoly.constant(n, params.one)
    sizes = {"n": n, "lambda": list(lam)}
    leading = poly.coefficient(lam)
    if leading != 1:
        difference = {
            "term": list(lam),
            "lhs": _json_scalar(leading),
            "rhs": _json_scalar(1),
        }
        return _report("orthogonality", family, sizes, params, difference)
    for mu in partitions_up_to(n, size(lam)):
        if mu == lam or not dominance_leq(mu, lam, n):
            continue
        value = inner_product(poly, mu, params, weight)
        if value:
            difference = {
                "term": list(mu),
                "lhs": _json_scalar(value),
                "rhs": _json_scalar(0),
            }
            return _report("orthogonality", family, sizes, params, difference)
    return _report("orthogonality", family, sizes, params, None)


def macdonald_branching_product(
    lam: Partition, mu: Partition, q: Any, t: Any
) -> Any:
    """Closed product for the Macdonald branching coefficient of lam/mu."""
    length = len(mu)
    upper = pad(lam, length + 1)
    result = q**0
    for j in range(1, length + 1):
        steps = upper[j - 1] - mu[j - 1]
        for k in range(j, length + 1):
            top = upper[k]
            numer = q_pochhammer(
                q ** (mu[j - 1] - mu[k - 1]) * t ** (1 + k - j), q, steps
            ) * q_pochhammer(q ** (1 + mu[j - 1] - top) * t ** (k - j), q, steps)
            denom = q_pochhammer(
                q ** (1 + mu[j - 1] - mu[k - 1]) * t ** (k - j), q, steps
            ) * q_pochhammer(q ** (mu[j - 1] - top) * t ** (1 + k - j), q, steps)
            result = result * numer / denom
    return result


def jack_branching_product(lam: Partition, mu: Partition, g: Any) -> Any:
    """Closed product for the Jack branching coefficient of lam/mu."""
    length = len(mu)
    upper = pad(lam, length + 1)
    result = g**0
    for j in range(1, length + 1):
        steps = upper[j - 1] - mu[j - 1]
        for k in range(j, length + 1):
            top = upper[k]
            gap = mu[j - 1] - mu[k - 1]
            numer = pochhammer(g * (1 + k - j) + gap, steps) * pochhammer(
                g * (k - j) + 1 + mu[j - 1] - top, steps
            )
            denom = pochhammer(g * (k - j) + 1 + gap, steps) * pochhammer(
                g * (1 + k - j) + mu[j - 1] - top, steps
            )
            result = result * numer / denom
    return result


@timed
@generic_only
def product_formula_check(
    kind: str,
    lam: Partition,
    mu: Partition,
    params: ParamPoint,
    *,
    perturb: bool = False,
) -> CheckReport:
    """The top branching coefficient over a horizontal strip against a product.

    kind "macdonald" takes Askey-Wilson parameters, kind "jack" Hermite ones.
    """
    if not is_horizontal_strip(lam, mu):
        raise create_error(
            ErrorType.VALIDATION, f"{list(lam)}/{list(mu)} is not a horizontal strip"
        )
    if kind == "macdonald":
        _require(params, (Family.AW,), "macdonald product formula")
        expected = macdonald_branching_product(lam, mu, params["q"], params["t"])
    elif kind == "jack":
        _require(params, (Family.HERMITE,), "jack product formula")
        expected = jack_branching_product(lam, mu, params["g"])
    else:
        raise create_error(
            ErrorType.VALIDATION, f"unknown product formula {kind!r}"
        )
    if perturb:
        expected = -expected
    n = max(len(mu), len(lam) - 1)
    top = branch_coeffs(lam, mu, n, params)[size(lam) - size(mu)]
    difference = None
    if top != expected:
        difference = {
            "term": list(mu),
            "lhs": _json_scalar(top),
            "rhs": _json_scalar(expected),
        }
    return _report(
        "product",
        params.family,
        {"kind": kind, "lambda": list(lam), "mu": list(mu)},
        params,
        difference,
    )


@timed
def degeneration_check(
    chain: Chain,
    lam: Partition,
    n: int,
    target: ParamPoint,
    point: list[Fraction],
    steps: tuple[Fraction, ...] = DEFAULT_STEPS,
    *,
    ratio_min: float = 1.5,
    ratio_max: float = 3.0,
    tolerance: float = 1e-3,
    perturb: bool = False,
) -> CheckReport:
    """Error trend of the scaled source polynomial against the target."""
    result = run_chain(
        chain,
        lam,
        n,
        target,
        point,
        steps,
        ratio_min=ratio_min,
        ratio_max=ratio_max,
        tolerance=tolerance,
        negate_target=perturb,
    )
    report = _report(
        "degeneration",
        target.family,
        {"chain": chain.value, "n": n, "lambda": list(lam)},
        target,
        None if result.passed else {"errors": result.errors, "ratios": result.ratios},
        result.detail,
    )
    report.sizes["point"] = [str(x) for x in point]
    return report


def _askey_wilson_near_zero(params: ParamPoint, c: Fraction, step: Any) -> ParamPoint:
    """AW point at q = step^2 with t0_hat = c/step, other parameters as given."""
    names = ("t", "t0", "t1", "t2", "t3")
    if isinstance(step, LimitScalar):
        values = [("q", step * step)]
        values += [(name, LimitScalar.constant(params[name])) for name in names]
        values.append(("t0_hat", LimitScalar.constant(GaussRational(c)) / step))
        return ParamPoint(Family.AW, tuple(values))
    raw = {name: params[name] for name in names}
    raw.update(q=GaussRational(step * step), t0_hat=GaussRational(c / step))
    return make_params(Family.AW, raw)


@timed
@generic_only
def whittaker_consistency_check(
    n: int,
    lam: Partition,
    r: int,
    params: ParamPoint,
    steps: tuple[Fraction, ...] = WHITTAKER_STEPS,
    *,
    ratio_min: float = 1.5,
    ratio_max: float = 3.0,
    tolerance: float = 1e-3,
    perturb: bool = False,
) -> CheckReport:
    """The q = 0 Pieri formulas against the q -> 0 limit of the AW ones.

    The limit is taken twice: exactly, with q = beta^2 and t0_hat = c/beta over
    the rational functions of beta, and as a float trend at shrinking q.
    """
    if params.family is not Family.WHITTAKER or params["q"]:
        raise create_error(
            ErrorType.VALIDATION, "whittaker Pieri formulas are evaluated at q = 0"
        )
    product = params["t0"] * params["t1"] * params["t2"] * params["t3"]
    c = rational_sqrt(product)
    if c is None:
        raise create_error(
            ErrorType.UNSUPPORTED_PARAMETERS,
            "t0*t1*t2*t3 must be a rational square for the q -> 0 check",
        )
    formal = _askey_wilson_near_zero(params, c, LimitScalar.beta())
    points = [_askey_wilson_near_zero(params, c, step) for step in steps]
    errors = [0.0] * len(steps)
    difference = None
    flipped = not perturb
    for mu in proximate_partitions(lam, r, n):
        expected = pieri_coeff(PieriRequest(Family.WHITTAKER, lam, mu, n, r, params))
        if expected and not flipped:
            expected, flipped = -expected, True
        limit = pieri_coeff(PieriRequest(Family.AW, lam, mu, n, r, formal))
        observed = limit.limit_at_zero()
        if difference is None and observed != expected:
            difference = {
                "term": list(mu),
                "lhs": _json_scalar(observed),
                "rhs": _json_scalar(expected),
            }
        exact = complex(expected)
        for index, point in enumerate(points):
            value = complex(pieri_coeff(PieriRequest(Family.AW, lam, mu, n, r, point)))
            error = abs(value - exact) / max(abs(exact), 1.0)
            errors[index] = max(errors[index], error)
    trend = assess_trend(
        TrendResult(Chain.AW_WHITTAKER, [float(step) for step in steps], errors),
        ratio_min,
        ratio_max,
        tolerance,
    )
    if difference is None and not trend.passed:
        difference = {"errors": trend.errors, "ratios": trend.ratios}
    return _report(
        "whittaker",
        Family.WHITTAKER,
        {"n": n, "lambda": list(lam), "r": r},
        params,
        difference,
        trend.detail,
    )


def _hermite_values(params: ParamPoint) -> tuple[GaussRational, GaussRational]:
    _require(params, (Family.HERMITE,), "hermite limit")
    return params["g"], params["omega"]


@timed
@generic_only
def hermite_branching_check(
    lam: Partition, n: int, params: ParamPoint, *, perturb: bool = False
) -> CheckReport:
    """Branching coefficients read off the exact limit polynomial in n+1 variables.

    The (n+1)-variable polynomial is sliced by powers of the last variable and
    each slice is decomposed in the n-variable Hermite basis.
    """
    g, omega = _hermite_values(params)
    full = build_hermite_exact(HermiteBuildPlan.create(lam, n + 1, g, omega))
    slices: dict[int, ExponentMap] = {}
    for exponent, coeff in expand(full).items():
        slices.setdefault(exponent[-1], {})[exponent[:-1]] = coeff
    observed: dict[tuple[int, ...], GaussRational] = {}
    for k, exps in slices.items():
        lower = collect_mbasis(exps, n)
        for mu, coeff in expand_in_hermite(lower, g, omega).items():
            observed[(*mu, -1, k)] = coeff
    expected: dict[tuple[int, ...], Any] = {}
    for index, mu in enumerate(preceding_partitions(lam, n)):
        for k, coeff in enumerate(branch_coeffs(lam, mu, n, params)):
            if perturb and index == 0 and k == 0:
                coeff = -coeff if coeff else params.one
            if coeff:
                expected[(*mu, -1, k)] = coeff
    return _report(
        "hermite-branching",
        Family.HERMITE,
        {"n": n, "lambda": list(lam)},
        params,
        first_difference(observed, expected),
    )


@timed
@generic_only
def hermite_extraction_check(
    lam: Partition,
    n: int,
    r: int,
    params: ParamPoint,
    *,
    perturb: bool = False,
) -> CheckReport:
    """Extracted Hermite Pieri coefficients: support, parity, split and closed form."""
    g, omega = _hermite_values(params)
    expansion = hermite_pieri_expansion(lam, n, r, g, omega)
    if perturb and expansion:
        first = max(expansion)
        expansion[first] = -expansion[first]
    split = (omega / 3, omega * 2 / 3)
    alternative = hermite_pieri_expansion(lam, n, r, g, omega, split)
    sizes = {"n": n, "lambda": list(lam), "r": r}
    zero = GaussRational(0)
    candidates = set(expansion) | set(alternative)
    candidates.update(proximate_partitions(lam, r, n))
    for mu in sorted(candidates, reverse=True):
        value = expansion.get(mu, zero)
        problem = None
        if value and not proximity(lam, mu, r, n):
            problem, reference = "support", zero
        elif value and (size(lam) + r - size(mu)) % 2:
            problem, reference = "parity", zero
        elif value != alternative.get(mu, zero):
            problem, reference = "split", alternative.get(mu, zero)
        elif len(index_sets(lam, mu, n).J) == r and proximity(lam, mu, r, n):
            reference = pieri_coeff(PieriRequest(Family.HERMITE, lam, mu, n, r, params))
            if reference != value:
                problem = "closed form"
        if problem:
            difference = {
                "term": list(mu),
                "lhs": _json_scalar(value),
                "rhs": _json_scalar(reference),
            }
            return _report(
                "hermite-extraction", Family.HERMITE, sizes, params, difference, problem
            )
    return _report("hermite-extraction", Family.HERMITE, sizes, params, None)


@timed
@generic_only
def construction_check(
    family: Family, lam: Partition, n: int, params: ParamPoint, *, perturb: bool = False
) -> CheckReport:
    """Monic, dominance-triangular and, for real parameters, real coefficients.

    Symmetry is implied: the builder recollects into the m-basis and raises
    NOT_SYMMETRIC otherwise.
    """
    poly = build(family, lam, n, params)
    sizes = {"n": n, "lambda": list(lam)}
    leading = poly.coefficient(lam)
    if perturb:
        leading = -leading
    if leading != 1:
        difference = {
            "term": list(lam),
            "lhs": _json_scalar(leading),
            "rhs": _json_scalar(1),
        }
        return _report("construction", family, sizes, params, difference, "monic")
    real = family in REAL_FAMILIES or (
        family in (Family.AW, Family.WHITTAKER)
        and all(value.is_real for _, value in params.values)
    )
    for mu, coeff in poly.ordered():
        problem = None
        if not dominance_leq(mu, lam, n):
            problem = "triangular"
        elif real and not coeff.is_real:
            problem = "real"
        if problem:
            difference = {
                "term": list(mu),
                "lhs": _json_scalar(coeff),
                "rhs": _json_scalar(0),
            }
            return _report("construction", family, sizes, params, difference, problem)
    if family is Family.HERMITE:
        plan = HermiteBuildPlan.create(lam, n, params["g"], params["omega"])
        difference = first_difference(poly.terms, build_hermite_exact(plan).terms)
        if difference:
            return _report(
                "construction", family, sizes, params, difference, "hermite limit"
            )
    return _report("construction", family, sizes, params, None)


@timed
def branching_support_check(
    lam: Partition, n: int, params: ParamPoint, *, perturb: bool = False
) -> CheckReport:
    """Forced branching coefficients vanish on pairs outside the branching order."""
    width = lam[0] if lam else 0
    sizes = {"n": n, "lambda": list(lam)}
    checked = 0
    for mu in enumerate_subpartitions(n, width):
        if precedes(mu, lam, n):
            continue
        try:
            coeffs = branch_coeffs(lam, mu, n, params, force=True)
        except HyperbranchError as e:
            if e.error_type is not ErrorType.NON_GENERIC:
                raise
            continue
        checked += 1
        if perturb and checked == 1:
            coeffs = [coeffs[0] + params.one, *coeffs[1:]]
        for k, coeff in enumerate(coeffs):
            if coeff:
                difference = {
                    "term": [*mu, -1, k],
                    "lhs": _json_scalar(coeff),
                    "rhs": _json_scalar(0),
                }
                return _report(
                    "branching-support", params.family, sizes, params, difference
                )
    return _report(
        "branching-support",
        params.family,
        sizes,
        params,
        None,
        f"{checked} non-preceding pairs evaluated",
    )


@dataclass(frozen=True)
class SuiteFilter:
    """Optional narrowing of a suite, as given on the command line."""

    family: Family | None = None
    m: int | None = None
    n: int | None = None
    lam: Partition | None = None
    r: int | None = None
    chain: Chain | None = None
    perturb: bool = False

    def families(self, allowed: Iterable[Family]) -> list[Family]:
        return [f for f in allowed if self.family is None or f is self.family]

    def pick(self, name: str, default: Iterable[Any]) -> list[Any]:
        chosen = getattr(self, name)
        return [value for value in default if chosen is None or value == chosen]


@dataclass(frozen=True)
class Job:
    """One check at one parameter point; parameters are drawn per attempt."""

    check: str
    family: Family
    sizes: dict[str, Any]
    point: int
    run: Callable[[ParamPoint], CheckReport]
    draw: Callable[[random.Random], ParamPoint]


def _draw_random(family: Family, height: int, rng: random.Random) -> ParamPoint:
    return random_params(family, rng, height)


def _draw_whittaker_pieri(height: int, rng: random.Random) -> ParamPoint:
    return random_params(Family.WHITTAKER, rng, height, whittaker_pieri_side=True)


def _draw_target(chain: Chain, rng: random.Random) -> ParamPoint:
    return random_target(chain, np.random.default_rng(rng.getrandbits(64)))


def _draw_oracle(
    family: Family, fixed: dict[str, Fraction], height: int, rng: random.Random
) -> ParamPoint:
    raw: dict[str, Any] = dict(fixed)
    if family is not Family.JACOBI:
        raw["omega"] = random_rational(rng, height)
    if family is Family.LAGUERRE:
        raw["h"] = random_rational(rng, height)
    return make_params(family, raw)


def _lambdas(selection: SuiteFilter, n: int, max_size: int) -> list[Partition]:
    if selection.lam is not None:
        return [selection.lam] if len(selection.lam) <= n else []
    return list(partitions_up_to(n, max_size))


def _cauchy_jobs(config: HyperbranchConfig, selection: SuiteFilter) -> list[Job]:
    jobs = []
    for family in selection.families(CAUCHY_FAMILIES):
        for m in selection.pick("m", (1, 2)):
            for n in selection.pick("n", (1, 2)):
                for point in range(config.param_points):
                    jobs.append(
                        Job(
                            "cauchy",
                            family,
                            {"m": m, "n": n},
                            point,
                            partial(
                                cauchy_check, family, m, n, perturb=selection.perturb
                            ),
                            partial(_draw_random, family, config.param_height),
                        )
                    )
    return jobs


def _pieri_jobs(config: HyperbranchConfig, selection: SuiteFilter) -> list[Job]:
    jobs = []
    for family in selection.families(PIERI_FAMILIES):
        for n in selection.pick("n", (1, 2, 3)):
            for lam in _lambdas(selection, n, 4):
                for r in selection.pick("r", range(1, n + 1)):
                    for point in range(min(2, config.param_points)):
                        jobs.append(
                            Job(
                                "pieri",
                                family,
                                {"n": n, "lambda": list(lam), "r": r},
                                point,
                                partial(
                                    pieri_closure_check,
                                    family,
                                    n,
                                    lam,
                                    r,
                                    perturb=selection.perturb,
                                ),
                                partial(_draw_random, family, config.param_height),
                            )
                        )
    return jobs


def _construction_jobs(config: HyperbranchConfig, selection: SuiteFilter) -> list[Job]:
    jobs = []
    for family in selection.families(Family):
        draw = partial(_draw_random, family, config.param_height)
        for n in selection.pick("n", (1, 2, 3)):
            for lam in _lambdas(selection, n, 4):
                run = partial(
                    construction_check, family, lam, n, perturb=selection.perturb
                )
                sizes = {"n": n, "lambda": list(lam)}
                jobs.append(Job("construction", family, sizes, 0, run, draw))
        for n in selection.pick("n", (1, 2)):
            # () has no non-preceding pairs to evaluate
            for lam in filter(None, _lambdas(selection, n + 1, 4)):
                run = partial(
                    branching_support_check, lam, n, perturb=selection.perturb
                )
                sizes = {"n": n, "lambda": list(lam)}
                jobs.append(Job("branching-support", family, sizes, 0, run, draw))
    return jobs


def _recurrence_jobs(config: HyperbranchConfig, selection: SuiteFilter) -> list[Job]:
    return [
        Job(
            "recurrence",
            family,
            {"max_degree": 6},
            point,
            partial(recurrence_check, family, 6, perturb=selection.perturb),
            partial(_draw_random, family, config.param_height),
        )
        for family in selection.families(RECURRENCE_FAMILIES)
        for point in range(config.param_points)
    ]


def _orthogonality_jobs(config: HyperbranchConfig, selection: SuiteFilter) -> list[Job]:
    fixed_points: list[tuple[Family, dict[str, Fraction]]] = []
    for family in selection.families((Family.HERMITE, Family.LAGUERRE)):
        fixed_points += [(family, {"g": Fraction(g)}) for g in (0, 1, 2)]
    if selection.families((Family.JACOBI,)):
        fixed_points += [
            (Family.JACOBI, {"g": g, "g0": g0, "g1": g1})
            for g, g0, g1 in JACOBI_ORACLE_TRIPLES
        ]
    jobs = []
    for family, fixed in fixed_points:
        draw = partial(_draw_oracle, family, fixed, config.param_height)
        for n in selection.pick("n", (1, 2)):
            for lam in _lambdas(selection, n, 3):
                run = partial(
                    orthogonality_oracle, family, n, lam, perturb=selection.perturb
                )
                sizes = {"n": n, "lambda": list(lam), "g": str(fixed["g"])}
                jobs.append(Job("orthogonality", family, sizes, 0, run, draw))
    return jobs


def _hermite_jobs(config: HyperbranchConfig, selection: SuiteFilter) -> list[Job]:
    if not selection.families((Family.HERMITE,)):
        return []
    draw = partial(_draw_random, Family.HERMITE, config.param_height)
    jobs = []
    for n in selection.pick("n", (0, 1, 2)):
        box = enumerate_subpartitions(n + 1, 3)
        lams = [selection.lam] if selection.lam is not None else box
        for lam in lams:
            run = partial(hermite_branching_check, lam, n, perturb=selection.perturb)
            sizes = {"n": n, "lambda": list(lam)}
            jobs.append(Job("hermite-branching", Family.HERMITE, sizes, 0, run, draw))
    for n in selection.pick("n", (1, 2)):
        for lam in _lambdas(selection, n, 3):
            for r in selection.pick("r", range(1, n + 1)):
                run = partial(
                    hermite_extraction_check, lam, n, r, perturb=selection.perturb
                )
                sizes = {"n": n, "lambda": list(lam), "r": r}
                jobs.append(
                    Job("hermite-extraction", Family.HERMITE, sizes, 0, run, draw)
                )
    return jobs


def _product_jobs(config: HyperbranchConfig, selection: SuiteFilter) -> list[Job]:
    jobs = []
    kinds = [
        (kind, family)
        for kind, family in (("macdonald", Family.AW), ("jack", Family.HERMITE))
        if selection.families((family,))
    ]
    for kind, family in kinds:
        draw = partial(_draw_random, family, config.param_height)
        for lam in enumerate_subpartitions(2, 3):
            if selection.lam is not None and lam != selection.lam:
                continue
            upper = pad(lam, 2)
            for first in range(upper[1], upper[0] + 1):
                mu = make_partition((first,))
                for point in range(min(2, config.param_points)):
                    run = partial(
                        product_formula_check, kind, lam, mu, perturb=selection.perturb
                    )
                    sizes = {"kind": kind, "lambda": list(lam), "mu": list(mu)}
                    jobs.append(Job("product", family, sizes, point, run, draw))
    return jobs


def _column_row_jobs(config: HyperbranchConfig, selection: SuiteFilter) -> list[Job]:
    return [
        Job(
            "column-row",
            family,
            {"m": m},
            point,
            partial(column_row_check, family, m, perturb=selection.perturb),
            partial(_draw_random, family, config.param_height),
        )
        for family in selection.families(COLUMN_ROW_FAMILIES)
        for m in selection.pick("m", (1, 2, 3))
        for point in range(config.param_points)
    ]


def _degeneration_jobs(config: HyperbranchConfig, selection: SuiteFilter) -> list[Job]:
    jobs = []
    for chain in selection.pick("chain", Chain):
        index = list(Chain).index(chain)
        family = CHAIN_FAMILIES[chain][1]
        if selection.family is not None and family is not selection.family:
            continue
        for n in selection.pick("n", (1, 2)):
            point = random_point(np.random.default_rng([config.seed, index, n]), n)
            for lam in _lambdas(selection, n, 2):
                run = partial(
                    degeneration_check,
                    chain,
                    lam,
                    n,
                    point=point,
                    ratio_min=config.halving_ratio_min,
                    ratio_max=config.halving_ratio_max,
                    tolerance=config.degeneration_tolerance,
                    perturb=selection.perturb,
                )
                sizes = {"chain": chain.value, "n": n, "lambda": list(lam)}
                draw = partial(_draw_target, chain)
                jobs.append(Job("degeneration", family, sizes, 0, run, draw))
    return jobs


def _whittaker_jobs(config: HyperbranchConfig, selection: SuiteFilter) -> list[Job]:
    if not selection.families((Family.WHITTAKER,)):
        return []
    jobs = []
    draw = partial(_draw_whittaker_pieri, config.param_height)
    for n in selection.pick("n", (1, 2)):
        for lam in _lambdas(selection, n, 2):
            for r in selection.pick("r", range(1, n + 1)):
                run = partial(
                    whittaker_consistency_check,
                    n,
                    lam,
                    r,
                    ratio_min=config.halving_ratio_min,
                    ratio_max=config.halving_ratio_max,
                    tolerance=config.degeneration_tolerance,
                    perturb=selection.perturb,
                )
                sizes = {"n": n, "lambda": list(lam), "r": r}
                jobs.append(Job("whittaker", Family.WHITTAKER, sizes, 0, run, draw))
    return jobs


_SUITE_BUILDERS: dict[str, Callable[[HyperbranchConfig, SuiteFilter], list[Job]]] = {
    "cauchy": _cauchy_jobs,
    "pieri": _pieri_jobs,
    "construction": _construction_jobs,
    "recurrence": _recurrence_jobs,
    "orthogonality": _orthogonality_jobs,
    "hermite": _hermite_jobs,
    "product": _product_jobs,
    "column-row": _column_row_jobs,
    "degeneration": _degeneration_jobs,
    "whittaker": _whittaker_jobs,
}


def suite_jobs(
    name: str, config: HyperbranchConfig, selection: SuiteFilter | None = None
) -> list[Job]:
    """Jobs of a named suite, or of every suite for "all"."""
    selection = selection or SuiteFilter()
    if name == "all":
        return [
            job
            for suite in SUITES
            for job in _SUITE_BUILDERS[suite](config, selection)
        ]
    try:
        builder = _SUITE_BUILDERS[name]
    except KeyError as e:
        choices = ", ".join((*SUITES, "all"))
        raise create_error(
            ErrorType.VALIDATION, f"unknown check {name!r} (expected {choices})", e
        ) from e
    return builder(config, selection)


def run_job(job: Job, config: HyperbranchConfig) -> CheckReport:
    """Run a job, redrawing the parameter point while it is non-generic."""
    for attempt in range(config.max_retries + 1):
        params = job.draw(point_rng(config.seed, job.point, attempt))
        try:
            report = job.run(params)
        except HyperbranchError as e:
            if e.error_type is ErrorType.NON_GENERIC:
                logger.warning(
                    "Non-generic parameter point, redrawing",
                    check=job.check,
                    family=job.family.value,
                    attempt=attempt,
                )
                continue
            unsupported = e.error_type in (
                ErrorType.UNSUPPORTED_PARAMETERS,
                ErrorType.UNSUPPORTED_FAMILY,
            )
            report = CheckReport(
                job.check,
                job.family.value,
                dict(job.sizes),
                status=SKIP if unsupported else FAIL,
                detail=f"{e.error_type.value}: {e.message}",
            )
            logger.warning(
                "Check did not complete",
                check=job.check,
                family=job.family.value,
                error=e.error_type.value,
            )
        except Exception as e:
            # a foreign failure ends this job only, never the suite
            report = CheckReport(
                job.check,
                job.family.value,
                dict(job.sizes),
                status=ERROR,
                detail=f"{type(e).__name__}: {e}",
            )
            logger.error(
                "Check raised an unexpected exception",
                check=job.check,
                family=job.family.value,
                error=type(e).__name__,
                point=job.point,
            )
        if report.params is None:
            report.params = params.to_json()
        report.seed = config.seed
        report.point = job.point
        return report
    logger.error(
        "Retries exhausted", check=job.check, family=job.family.value, point=job.point
    )
    return CheckReport(
        job.check,
        job.family.value,
        dict(job.sizes),
        status=ERROR,
        seed=config.seed,
        point=job.point,
        detail=f"{ErrorType.NON_GENERIC.value}: {config.max_retries} retries exhausted",
    )


def _merge(reports: list[CheckReport]) -> list[CheckReport]:
    return sorted(reports, key=lambda report: report.check)


def run_suite(
    name: str, config: HyperbranchConfig, selection: SuiteFilter | None = None
) -> list[CheckReport]:
    """Run a suite sequentially; reports are ordered by check name."""
    jobs = suite_jobs(name, config, selection)
    logger.info("Running suite", suite=name, jobs=len(jobs))
    return _merge([run_job(job, config) for job in jobs])


async def run_suite_async(
    name: str, config: HyperbranchConfig, selection: SuiteFilter | None = None
) -> list[CheckReport]:
    """Run a suite on up to config.workers threads; same order as run_suite."""
    jobs = suite_jobs(name, config, selection)
    logger.info("Running suite", suite=name, jobs=len(jobs), workers=config.workers)
    limit = asyncio.Semaphore(config.workers)

    async def run(job: Job) -> CheckReport:
        async with limit:
            return await asyncio.to_thread(run_job, job, config)

    reports = await asyncio.gather(*(run(job) for job in jobs))
    return _merge(list(reports))
