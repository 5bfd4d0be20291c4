"""Per-family parameter bundles and their derived (hatted) values."""

from __future__ import annotations

import random
from collections.abc import Callable, Mapping
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Any

from .errors import ErrorType, create_error
from .scalars import IMAG_UNIT, GaussRational, LimitScalar, one_like


class Family(str, Enum):
    """Polynomial families with a branching construction."""

    AW = "aw"
    WHITTAKER = "whittaker"
    WILSON = "wilson"
    CHAHN = "chahn"
    JACOBI = "jacobi"
    LAGUERRE = "laguerre"
    HERMITE = "hermite"


REQUIRED_NAMES: dict[Family, tuple[str, ...]] = {
    Family.AW: ("q", "t", "t0", "t1", "t2", "t3", "t0_hat"),
    Family.WHITTAKER: ("q", "t", "t0", "t1", "t2", "t3"),
    Family.WILSON: ("g", "g0", "g1", "g2", "g3"),
    Family.CHAHN: ("g", "g0", "g1"),
    Family.JACOBI: ("g", "g0", "g1"),
    Family.LAGUERRE: ("g", "h", "omega"),
    Family.HERMITE: ("g", "omega"),
}

OPTIONAL_NAMES: dict[Family, tuple[str, ...]] = {Family.AW: ("t0_hat_dual",)}

REAL_FAMILIES = frozenset(
    {Family.WILSON, Family.JACOBI, Family.LAGUERRE, Family.HERMITE}
)

# number of hatted parameters in the rational families
HAT_COUNT = {Family.WILSON: 4, Family.CHAHN: 3, Family.JACOBI: 2}


def parse_family(name: str) -> Family:
    try:
        return Family(name.strip().lower())
    except ValueError as e:
        choices = ", ".join(family.value for family in Family)
        raise create_error(
            ErrorType.VALIDATION, f"unknown family {name!r} (expected {choices})", e
        ) from e


@dataclass(frozen=True, slots=True)
class ParamPoint:
    """A family tag with its parameter values, all of one scalar type."""

    family: Family
    values: tuple[tuple[str, Any], ...]

    def __getitem__(self, name: str) -> Any:
        for key, value in self.values:
            if key == name:
                return value
        raise KeyError(name)

    def get(self, name: str, default: Any = None) -> Any:
        try:
            return self[name]
        except KeyError:
            return default

    def as_dict(self) -> dict[str, Any]:
        return dict(self.values)

    @property
    def one(self) -> Any:
        return one_like(self.values[0][1])

    @property
    def is_formal(self) -> bool:
        return isinstance(self.values[0][1], LimitScalar)

    def replace(self, **changes: Any) -> ParamPoint:
        merged = self.as_dict()
        merged.update(changes)
        return ParamPoint(self.family, tuple(merged.items()))

    def map(self, func: Callable[[Any], Any]) -> ParamPoint:
        return ParamPoint(
            self.family, tuple((key, func(value)) for key, value in self.values)
        )

    def cache_key(self) -> tuple[Any, ...]:
        tokens = []
        for key, value in self.values:
            if isinstance(value, LimitScalar):
                tokens.append((key, value.cache_token()))
            else:
                tokens.append((key, value.re, value.im))
        return (self.family.value, *tokens)

    def to_json(self) -> dict[str, Any]:
        return {key: value.to_json() for key, value in self.values}

    # derived values

    def t_hat(self, index: int) -> Any:
        """Askey-Wilson dual parameters: t_hat_0 given, t_hat_l = t0 t_l / t_hat_0."""
        if index == 0:
            return self["t0_hat"]
        return self["t0"] * self[f"t{index}"] / self["t0_hat"]

    def tau(self, j: int, n: int) -> Any:
        return self["t"] ** (n - j) * self["t0"]

    def tau_hat(self, j: int, n: int) -> Any:
        return self["t"] ** (n - j) * self["t0_hat"]

    def g_hat(self, index: int) -> Any:
        """Hatted parameters of the Wilson, continuous Hahn and Jacobi families."""
        family = self.family
        if family is Family.WILSON:
            g_hat0 = (self["g0"] + self["g1"] + self["g2"] + self["g3"] - 1) / 2
            if index == 0:
                return g_hat0
            return self["g0"] + self[f"g{index}"] - g_hat0
        if family is Family.CHAHN:
            g0, g1 = self["g0"], self["g1"]
            half = self.one / 2
            if index == 0:
                return g0.real_part() + g1.real_part() - half
            if index == 1:
                return g0.real_part() - g1.real_part() + half
            imaginary = g0.imag_part() - g1.imag_part()
            return half + imaginary * IMAG_UNIT
        if family is Family.JACOBI:
            if index == 0:
                return (self["g0"] + self["g1"] - 1) / 2
            return (self["g0"] - self["g1"] + 1) / 2
        raise create_error(
            ErrorType.UNSUPPORTED_FAMILY, f"{family.value} has no hatted g parameters"
        )

    def rho(self, j: int, n: int) -> Any:
        return (n - j) * self["g"] + self["g0"]

    def rho_hat(self, j: int, n: int) -> Any:
        return (n - j) * self["g"] + self.g_hat(0)


def _product_t(values: Mapping[str, Any]) -> Any:
    return values["t0"] * values["t1"] * values["t2"] * values["t3"]


def make_params(family: Family, raw: Mapping[str, Any]) -> ParamPoint:
    """Validate raw values for a family and bundle them.

    Genericity is not checked here; consumers raise NON_GENERIC on a
    vanishing denominator.
    """
    required = REQUIRED_NAMES[family]
    allowed = set(required) | set(OPTIONAL_NAMES.get(family, ()))
    unknown = sorted(set(raw) - allowed)
    if unknown:
        raise create_error(
            ErrorType.VALIDATION,
            f"unknown parameters for {family.value}: {', '.join(unknown)}",
        )
    missing = [name for name in required if name not in raw]
    if missing:
        raise create_error(
            ErrorType.VALIDATION,
            f"missing parameters for {family.value}: {', '.join(missing)}",
        )
    values = {name: GaussRational.parse(raw[name]) for name in required}
    for name in OPTIONAL_NAMES.get(family, ()):
        if name in raw:
            values[name] = GaussRational.parse(raw[name])

    if family in REAL_FAMILIES:
        complex_names = [name for name, value in values.items() if not value.is_real]
        if complex_names:
            raise create_error(
                ErrorType.VALIDATION,
                f"{family.value} parameters must be real: {', '.join(complex_names)}",
            )
    if family is Family.AW:
        _validate_askey_wilson(values)
    elif family is Family.WHITTAKER:
        zeros = [name for name in ("q", "t") if not values[name]]
        if len(zeros) != 1:
            raise create_error(
                ErrorType.VALIDATION,
                "whittaker parameters need exactly one of q, t equal to zero",
            )
        if not values["t0"]:
            raise create_error(ErrorType.VALIDATION, "whittaker requires t0 != 0")
    elif family is Family.CHAHN:
        if not values["g"].is_real:
            raise create_error(ErrorType.VALIDATION, "chahn requires a real g")
        if values["g0"].re <= 0 or values["g1"].re <= 0:
            raise create_error(
                ErrorType.VALIDATION, "chahn requires Re(g0) > 0 and Re(g1) > 0"
            )
    return ParamPoint(family, tuple(values.items()))


def _validate_askey_wilson(values: Mapping[str, GaussRational]) -> None:
    for name in ("q", "t", "t0"):
        if not values[name]:
            raise create_error(ErrorType.VALIDATION, f"aw requires {name} != 0")
    product = _product_t(values)
    if values["t0_hat"] ** 2 != product / values["q"]:
        raise create_error(
            ErrorType.VALIDATION, "t0_hat**2 must equal t0*t1*t2*t3/q exactly"
        )
    dual = values.get("t0_hat_dual")
    if dual is not None and dual**2 != product / values["t"]:
        raise create_error(
            ErrorType.VALIDATION, "t0_hat_dual**2 must equal t0*t1*t2*t3/t exactly"
        )


def lift(params: ParamPoint) -> ParamPoint:
    """The same point with every value promoted to a constant LimitScalar."""
    if params.is_formal:
        return params
    return params.map(LimitScalar.constant)


def whittaker_limit_point(params: ParamPoint) -> ParamPoint:
    """Formal Askey-Wilson point whose beta -> 0 limit is a q = 0 Whittaker point.

    q = T beta^2 and t0_hat = 1/beta with T = t0*t1*t2*t3, so t0_hat**2 = T/q
    holds identically and no square root of T is needed.
    """
    if params.family is not Family.WHITTAKER or params.is_formal:
        raise create_error(
            ErrorType.UNSUPPORTED_PARAMETERS,
            "the q -> 0 limit needs exact whittaker parameters",
        )
    if params["q"]:
        raise create_error(
            ErrorType.VALIDATION, "whittaker Pieri coefficients are defined at q = 0"
        )
    product = _product_t(params.as_dict())
    if not product:
        raise create_error(
            ErrorType.UNSUPPORTED_PARAMETERS,
            "the q -> 0 limit needs t0*t1*t2*t3 != 0",
        )
    beta = LimitScalar.beta()
    values: list[tuple[str, Any]] = [("q", LimitScalar.constant(product) * beta**2)]
    for name in ("t", "t0", "t1", "t2", "t3"):
        values.append((name, LimitScalar.constant(params[name])))
    values.append(("t0_hat", 1 / beta))
    return ParamPoint(Family.AW, tuple(values))


def point_rng(seed: int, index: int, attempt: int) -> random.Random:
    """Deterministic generator for the index-th point of a seeded run."""
    return random.Random(f"{seed}:{index}:{attempt}")


def random_rational(rng: random.Random, height: int) -> Fraction:
    """A positive rational different from 1 with bounded height."""
    while True:
        value = Fraction(rng.randint(1, height), rng.randint(1, height))
        if value != 1:
            return value


def random_params(
    family: Family,
    rng: random.Random,
    height: int = 12,
    *,
    whittaker_pieri_side: bool = False,
) -> ParamPoint:
    """A random generic parameter point.

    Askey-Wilson points are drawn so that both t0*t1*t2*t3/q and
    t0*t1*t2*t3/t are rational squares, which makes t0_hat and its dual
    available without square roots. Whittaker points keep t0*t1*t2*t3 a
    rational square for the same reason.
    """

    def draw() -> Fraction:
        return random_rational(rng, height)

    if family is Family.AW:
        a, b, c = draw(), draw(), draw()
        t0, t1, t2 = draw(), draw(), draw()
        raw: dict[str, Any] = {
            "q": a * a,
            "t": b * b,
            "t0": t0,
            "t1": t1,
            "t2": t2,
            "t3": c * c / (t0 * t1 * t2),
            "t0_hat": c / a,
            "t0_hat_dual": c / b,
        }
    elif family is Family.WHITTAKER:
        modulus, c = draw(), draw()
        t0, t1, t2 = draw(), draw(), draw()
        raw = {
            "q": 0 if whittaker_pieri_side else modulus,
            "t": modulus if whittaker_pieri_side else 0,
            "t0": t0,
            "t1": t1,
            "t2": t2,
            "t3": c * c / (t0 * t1 * t2),
        }
    elif family is Family.WILSON:
        raw = {name: draw() for name in ("g", "g0", "g1", "g2", "g3")}
    elif family is Family.CHAHN:
        raw = {
            "g": draw(),
            "g0": {"re": str(draw()), "im": str(draw() - 1)},
            "g1": {"re": str(draw()), "im": str(draw() - 1)},
        }
    else:
        raw = {name: draw() for name in REQUIRED_NAMES[family]}
    return make_params(family, raw)
