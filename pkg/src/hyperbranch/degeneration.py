"""Numeric trend checks for the limits that connect the families.

Every chain builds the source polynomial exactly at a sequence of step sizes.
Transcendental inputs (exponentials of parameters, cosines of the evaluation
point) are rounded to rationals with ``_DENOMINATOR``, so the only inexact part
is that rounding and the final float comparison of the error sequence.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any

import numpy as np
from sympy import I, N, Rational, cos, exp, sin

from .branching import build
from .errors import ErrorType, create_error
from .logging import with_component
from .params import Family, ParamPoint, make_params
from .partitions import Partition, size
from .scalars import GaussRational, rational_sqrt
from .sympoly import SymPoly, evaluate

logger = with_component("degeneration")

_DIGITS = 60
_DENOMINATOR = 10**40
# errors below this are rounding noise; the limit holds exactly
EXACT_FLOOR = 1e-25

DEFAULT_STEPS = tuple(Fraction(1, 2**s) for s in range(6, 11))


class Chain(str, Enum):
    """Source and target family of one degeneration limit."""

    AW_WILSON = "aw-wilson"
    AW_CHAHN = "aw-chahn"
    AW_JACOBI = "aw-jacobi"
    WILSON_LAGUERRE = "wilson-laguerre"
    CHAHN_HERMITE = "chahn-hermite"
    AW_WHITTAKER = "aw-whittaker"


CHAIN_FAMILIES: dict[Chain, tuple[Family, Family]] = {
    Chain.AW_WILSON: (Family.AW, Family.WILSON),
    Chain.AW_CHAHN: (Family.AW, Family.CHAHN),
    Chain.AW_JACOBI: (Family.AW, Family.JACOBI),
    Chain.WILSON_LAGUERRE: (Family.WILSON, Family.LAGUERRE),
    Chain.CHAHN_HERMITE: (Family.CHAHN, Family.HERMITE),
    Chain.AW_WHITTAKER: (Family.AW, Family.WHITTAKER),
}


def parse_chain(name: str) -> Chain:
    try:
        return Chain(name.strip().lower())
    except ValueError as e:
        choices = ", ".join(chain.value for chain in Chain)
        raise create_error(
            ErrorType.VALIDATION, f"unknown chain {name!r} (expected {choices})", e
        ) from e


@dataclass
class TrendResult:
    chain: Chain
    steps: list[float]
    errors: list[float]
    ratios: list[float] = field(default_factory=list)
    passed: bool = False
    detail: str = ""


def _fraction(value: Any) -> Fraction:
    rational = Rational(value).limit_denominator(_DENOMINATOR)
    return Fraction(int(rational.p), int(rational.q))


def _approx(expr: Any) -> GaussRational:
    """A Gaussian rational within 10^-80 or so of a sympy expression."""
    real, imag = N(expr, _DIGITS).as_real_imag()
    return GaussRational(_fraction(real), _fraction(imag))


def _sym(value: GaussRational | Fraction) -> Any:
    value = GaussRational.parse(value)
    real = Rational(value.re.numerator, value.re.denominator)
    imag = Rational(value.im.numerator, value.im.denominator)
    return real + I * imag


def _exact_sqrt(value: GaussRational, name: str) -> Fraction:
    root = rational_sqrt(value)
    if root is not None:
        return root
    raise create_error(
        ErrorType.UNSUPPORTED_PARAMETERS, f"{name} must be a rational square"
    )


def _askey_wilson(
    a: GaussRational,
    b: GaussRational,
    c: GaussRational,
    t0: GaussRational,
    t1: GaussRational,
    t2: GaussRational,
) -> ParamPoint:
    """AW point with q = a^2, t = b^2 and t0 t1 t2 t3 = c^2, so both hats exist."""
    return make_params(
        Family.AW,
        {
            "q": a * a,
            "t": b * b,
            "t0": t0,
            "t1": t1,
            "t2": t2,
            "t3": c * c / (t0 * t1 * t2),
            "t0_hat": c / a,
            "t0_hat_dual": c / b,
        },
    )


def _decay(rate: Any, step: Fraction) -> GaussRational:
    """exp(-step * rate), rounded."""
    return _approx(exp(-_sym(step) * rate))


def source_params(chain: Chain, target: ParamPoint, step: Fraction) -> ParamPoint:
    """Parameters of the source family at one step of the limit."""
    if target.family is not CHAIN_FAMILIES[chain][1]:
        raise create_error(
            ErrorType.VALIDATION,
            f"{chain.value} needs {CHAIN_FAMILIES[chain][1].value} parameters",
        )
    if chain is Chain.WILSON_LAGUERRE:
        h, omega = target["h"], target["omega"]
        beta2 = GaussRational(step * step)
        return make_params(
            Family.WILSON,
            {
                "g": target["g"],
                "g0": h / 3,
                "g1": h * 2 / 3,
                "g2": 3 / (omega * beta2),
                "g3": 3 / (omega * 2 * beta2),
            },
        )
    if chain is Chain.CHAHN_HERMITE:
        g_side = 2 / (target["omega"] * GaussRational(step * step))
        return make_params(
            Family.CHAHN, {"g": target["g"], "g0": g_side, "g1": g_side}
        )
    if chain is Chain.AW_WHITTAKER:
        a = GaussRational(_exact_sqrt(target["q"], "q"))
        product = target["t0"] * target["t1"] * target["t2"] * target["t3"]
        c = GaussRational(_exact_sqrt(product, "t0*t1*t2*t3"))
        return _askey_wilson(
            a, GaussRational(step), c, target["t0"], target["t1"], target["t2"]
        )

    g = _sym(target["g"])
    a = _decay(Rational(1, 2), step)
    b = _decay(g / 2, step)
    if chain is Chain.AW_WILSON:
        rates = [_sym(target[f"g{index}"]) for index in range(4)]
        c = _decay(sum(rates) / 2, step)
        t0, t1, t2 = (_decay(rate, step) for rate in rates[:3])
        return _askey_wilson(a, b, c, t0, t1, t2)
    if chain is Chain.AW_CHAHN:
        g0, g1 = _sym(target["g0"]), _sym(target["g1"])
        c = _decay(_sym(target["g0"].real_part() + target["g1"].real_part()), step)
        t0 = _approx(-I * exp(-_sym(step) * g0))
        t1 = _approx(-I * exp(-_sym(step) * g1))
        return _askey_wilson(a, b, c, t0, t1, t0.conjugate())
    g0, g1 = _sym(target["g0"]), _sym(target["g1"])
    c = _decay((g0 + g1) / 2, step)
    t0 = _decay(g0 / 3, step)
    t1 = -_decay(g1 / 3, step)
    t2 = _decay(2 * g0 / 3, step)
    return _askey_wilson(a, b, c, t0, t1, t2)


def _trig(func: Any, values: Sequence[Fraction], scale: Fraction) -> list[Any]:
    return [_approx(2 * func(_sym(scale * value))) for value in values]


def source_value(
    chain: Chain,
    poly: SymPoly,
    lam: Partition,
    point: Sequence[Fraction],
    step: Fraction,
) -> complex:
    """The scaled source polynomial at the evaluation point."""
    degree = size(lam)
    if chain is Chain.AW_WILSON:
        value = evaluate(poly, _trig(cos, point, step)) * (-1 / step**2) ** degree
    elif chain is Chain.AW_CHAHN:
        value = evaluate(poly, _trig(sin, point, step)) / (2 * step) ** degree
    elif chain in (Chain.AW_JACOBI, Chain.AW_WHITTAKER):
        value = evaluate(poly, _trig(cos, point, Fraction(1)))
    elif chain is Chain.WILSON_LAGUERRE:
        squares = [GaussRational(x * x / step**2) for x in point]
        value = evaluate(poly, squares) * step ** (2 * degree)
    else:
        scaled = [GaussRational(x / step) for x in point]
        value = evaluate(poly, scaled) * step**degree
    return complex(GaussRational.parse(value))


def target_value(family: Family, poly: SymPoly, point: Sequence[Fraction]) -> complex:
    if family in (Family.WILSON, Family.LAGUERRE):
        base = [GaussRational(x * x) for x in point]
    elif family in (Family.CHAHN, Family.HERMITE):
        base = [GaussRational(x) for x in point]
    else:
        base = _trig(cos, point, Fraction(1))
    return complex(GaussRational.parse(evaluate(poly, base)))


def assess_trend(
    result: TrendResult, ratio_min: float, ratio_max: float, tolerance: float
) -> TrendResult:
    """Decide pass/fail from the error sequence."""
    errors = np.asarray(result.errors, dtype=float)
    if np.all(errors < EXACT_FLOOR):
        result.passed = True
        result.detail = "source and target agree at every step"
        return result
    steps = np.asarray(result.steps, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        # error ratio per halving of step**2
        exponents = np.log(2.0) / (2.0 * np.log(steps[:-1] / steps[1:]))
        ratios = (errors[:-1] / errors[1:]) ** exponents
    result.ratios = [float(ratio) for ratio in ratios]
    in_window = bool(np.all((ratios >= ratio_min) & (ratios <= ratio_max)))
    small = bool(errors[-1] < tolerance)
    result.passed = in_window and small
    if not in_window:
        result.detail = (
            f"ratios per halving of step**2 {np.round(ratios, 3).tolist()} leave "
            f"[{ratio_min}, {ratio_max}]"
        )
    elif not small:
        result.detail = f"final error {errors[-1]:.3e} exceeds {tolerance}"
    else:
        result.detail = "error decays at the expected rate"
    return result


def run_chain(
    chain: Chain,
    lam: Partition,
    n: int,
    target: ParamPoint,
    point: Sequence[Fraction],
    steps: Sequence[Fraction] = DEFAULT_STEPS,
    *,
    ratio_min: float = 1.5,
    ratio_max: float = 3.0,
    tolerance: float = 1e-3,
    negate_target: bool = False,
) -> TrendResult:
    """Relative error of the scaled source against the target at every step.

    negate_target compares against minus the target, which must fail.
    """
    if len(point) != n:
        raise create_error(
            ErrorType.VALIDATION, f"evaluation point needs {n} coordinates"
        )
    if len(steps) < 2:
        raise create_error(ErrorType.VALIDATION, "a trend needs at least two steps")
    source_family, target_family = CHAIN_FAMILIES[chain]
    exact = target_value(
        target_family, build(target_family, lam, n, target), point
    )
    if negate_target:
        exact = -exact
    scale = max(abs(exact), 1.0)
    errors = []
    for step in steps:
        params = source_params(chain, target, step)
        poly = build(source_family, lam, n, params)
        approx = source_value(chain, poly, lam, point, step)
        errors.append(abs(approx - exact) / scale)
        logger.debug(
            "Degeneration step", chain=chain.value, step=float(step), error=errors[-1]
        )
    result = TrendResult(chain, [float(step) for step in steps], errors)
    return assess_trend(result, ratio_min, ratio_max, tolerance)


def random_target(
    chain: Chain, rng: np.random.Generator, height: int = 6
) -> ParamPoint:
    """A target point suitable for the chain, drawn from a numpy generator."""

    def draw() -> Fraction:
        while True:
            numer, denom = rng.integers(1, height + 1, size=2)
            value = Fraction(int(numer), int(denom))
            if value != 1:
                return value

    family = CHAIN_FAMILIES[chain][1]
    if family is Family.WHITTAKER:
        a, c = draw(), draw()
        t0, t1, t2 = draw(), draw(), draw()
        return make_params(
            family,
            {
                "q": a * a,
                "t": 0,
                "t0": t0,
                "t1": t1,
                "t2": t2,
                "t3": c * c / (t0 * t1 * t2),
            },
        )
    if family is Family.CHAHN:
        return make_params(
            family,
            {
                "g": draw(),
                "g0": {"re": str(draw()), "im": str(draw() - 1)},
                "g1": {"re": str(draw()), "im": str(draw() - 1)},
            },
        )
    if family is Family.WILSON:
        names = ("g", "g0", "g1", "g2", "g3")
        return make_params(family, {name: draw() for name in names})
    if family is Family.JACOBI:
        return make_params(family, {"g": draw(), "g0": draw(), "g1": draw()})
    if family is Family.LAGUERRE:
        return make_params(family, {"g": draw(), "h": draw(), "omega": draw()})
    return make_params(family, {"g": draw(), "omega": draw()})


def random_point(rng: np.random.Generator, n: int) -> list[Fraction]:
    """Distinct evaluation coordinates in (0, 1]."""
    picks = rng.choice(np.arange(1, 17), size=n, replace=False)
    return [Fraction(int(pick), 16) for pick in picks]
