"""Symmetric Hermite polynomials as an exact limit of continuous Hahn ones.

With g0 = 1/(omega0 beta^2) and g1 = 1/(omega1 beta^2), beta^|lam| times the
continuous Hahn polynomial at x/beta tends to the Hermite polynomial. Here beta
is a formal variable, so every m-basis coefficient is a rational function of
beta and the limit is taken exactly, one coefficient at a time.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from functools import cache
from typing import Any

from .branching import get_builder
from .errors import ErrorType, HyperbranchError, create_error, generic_only
from .logging import with_component
from .params import Family, ParamPoint
from .partitions import Partition, graded_key, make_partition, pad, proximity, size
from .pieri import PieriRequest, pieri_coeff
from .scalars import GaussRational, LimitScalar
from .sympoly import SymPoly, elementary, mbasis_mul

logger = with_component("hermite_limit")


@dataclass(frozen=True, slots=True)
class HermiteBuildPlan:
    """One Hermite polynomial and the split omega = omega0 + omega1 used for it.

    A nonzero ``g_shift`` evaluates the continuous Hahn side at
    g + g_shift * beta, which moves integer g (and g = 0) off the removable
    poles of the branching formulas before the limit is taken.
    """

    lam: Partition
    n: int
    g: GaussRational
    omega: GaussRational
    omega0: GaussRational
    omega1: GaussRational
    g_shift: GaussRational = GaussRational(0)

    def __post_init__(self) -> None:
        pad(self.lam, self.n)
        for name in ("omega", "omega0", "omega1"):
            value = getattr(self, name)
            if not value.is_real or value.re <= 0:
                raise create_error(
                    ErrorType.VALIDATION, f"hermite {name} must be a positive rational"
                )
        if not self.g.is_real or self.g.re < 0 or not self.g_shift.is_real:
            raise create_error(
                ErrorType.VALIDATION, "hermite g must be a nonnegative rational"
            )
        if not self.g and self.g_shift.re <= 0:
            raise create_error(
                ErrorType.VALIDATION, "hermite g = 0 needs a positive g_shift"
            )
        if self.omega0 + self.omega1 != self.omega:
            raise create_error(
                ErrorType.VALIDATION, "omega0 + omega1 must equal omega exactly"
            )

    @classmethod
    def create(
        cls,
        lam: Partition,
        n: int,
        g: Any,
        omega: Any,
        split: tuple[Any, Any] | None = None,
        *,
        g_shift: Any = 0,
    ) -> HermiteBuildPlan:
        g_value = GaussRational.parse(g)
        omega_value = GaussRational.parse(omega)
        if split is None:
            first = second = omega_value / 2
        else:
            first, second = (GaussRational.parse(part) for part in split)
        shift = GaussRational.parse(g_shift)
        return cls(lam, n, g_value, omega_value, first, second, shift)

    def chahn_params(self) -> ParamPoint:
        beta = LimitScalar.beta()
        g = LimitScalar.constant(self.g) + LimitScalar.constant(self.g_shift) * beta
        return ParamPoint(
            Family.CHAHN,
            (
                ("g", g),
                ("g0", 1 / (LimitScalar.constant(self.omega0) * beta * beta)),
                ("g1", 1 / (LimitScalar.constant(self.omega1) * beta * beta)),
            ),
        )


@cache
def _build_cached(plan: HermiteBuildPlan) -> SymPoly:
    formal = get_builder(plan.chahn_params()).build(plan.lam, plan.n)
    beta = LimitScalar.beta()
    degree = size(plan.lam)
    terms: dict[Partition, GaussRational] = {}
    for nu, coeff in formal.terms.items():
        value = (coeff * beta ** (degree - size(nu))).limit_at_zero()
        if not value.is_real:
            raise create_error(
                ErrorType.NONZERO_IMAGINARY,
                f"coefficient of m_{list(nu)} in the hermite limit is {value}",
            )
        terms[nu] = value
    logger.debug("Hermite limit", lam=list(plan.lam), n=plan.n, terms=len(terms))
    return SymPoly(plan.n, terms)


@generic_only
def build_hermite_exact(plan: HermiteBuildPlan) -> SymPoly:
    """P^H_lam from the exact beta -> 0 limit of the continuous Hahn polynomial."""
    return _build_cached(plan)


@generic_only
def expand_in_hermite(
    f: SymPoly,
    g: Any,
    omega: Any,
    split: tuple[Any, Any] | None = None,
) -> dict[Partition, GaussRational]:
    """Coefficients of f in the Hermite basis by triangular back-substitution.

    The largest term under (size, lex) is always a leading term, since every
    P^H_nu only adds m-basis terms below nu.
    """
    residual = f
    result: dict[Partition, GaussRational] = {}
    while not residual.is_zero():
        top = max(residual.terms, key=_top_key)
        coeff = residual.terms[top]
        plan = HermiteBuildPlan.create(top, f.nvars, g, omega, split)
        residual = residual - build_hermite_exact(plan).scale(coeff)
        result[top] = coeff
    return result


def _top_key(nu: Partition) -> tuple[int, tuple[int, ...]]:
    total, negated = graded_key(nu)
    return total, tuple(-part for part in negated)


def extract_pieri_hermite(
    lam: Partition,
    mu: Partition,
    n: int,
    r: int,
    g: Any,
    omega: Any,
    split: tuple[Any, Any] | None = None,
) -> GaussRational:
    """The coefficient of P^H_mu in e_r * P^H_lam, for any r."""
    lam, mu = make_partition(lam), make_partition(mu)
    if r == 0:
        return GaussRational(1 if lam == mu else 0)
    if not proximity(lam, mu, r, n):
        return GaussRational(0)
    product = _pieri_expansion(
        lam,
        n,
        r,
        GaussRational.parse(g),
        GaussRational.parse(omega),
        _split_key(split),
    )
    return product.get(mu, GaussRational(0))


def hermite_pieri_expansion(
    lam: Partition,
    n: int,
    r: int,
    g: Any,
    omega: Any,
    split: tuple[Any, Any] | None = None,
) -> dict[Partition, GaussRational]:
    """Every nonzero coefficient of e_r * P^H_lam in the Hermite basis."""
    return dict(
        _pieri_expansion(
            lam,
            n,
            r,
            GaussRational.parse(g),
            GaussRational.parse(omega),
            _split_key(split),
        )
    )


def pieri_routed(req: PieriRequest) -> Any:
    """pieri_coeff, falling back to extraction for the open Hermite cases."""
    req = replace(req, lam=make_partition(req.lam), mu=make_partition(req.mu))
    try:
        return pieri_coeff(req)
    except HyperbranchError as e:
        if e.error_type is not ErrorType.HERMITE_GENERAL_CASE:
            raise
    if req.params.is_formal:
        raise create_error(
            ErrorType.UNSUPPORTED_PARAMETERS,
            "hermite extraction needs exact rational parameters",
        )
    logger.debug(
        "Extracting hermite coefficient",
        lam=list(req.lam),
        mu=list(req.mu),
        r=req.r,
    )
    return extract_pieri_hermite(
        req.lam, req.mu, req.n, req.r, req.params["g"], req.params["omega"]
    )


def _split_key(
    split: tuple[Any, Any] | None,
) -> tuple[GaussRational, GaussRational] | None:
    if split is None:
        return None
    return GaussRational.parse(split[0]), GaussRational.parse(split[1])


@cache
def _pieri_expansion(
    lam: Partition,
    n: int,
    r: int,
    g: GaussRational,
    omega: GaussRational,
    split: tuple[GaussRational, GaussRational] | None,
) -> dict[Partition, GaussRational]:
    base = build_hermite_exact(HermiteBuildPlan.create(lam, n, g, omega, split))
    product = mbasis_mul(elementary(n, r, GaussRational(1)), base)
    return expand_in_hermite(product, g, omega, split)
