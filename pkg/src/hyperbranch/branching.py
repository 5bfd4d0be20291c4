"""Branching coefficients and the recursive construction of P_lam.

An (n+1)-variable polynomial expands as a sum over mu preceding lam of the
n-variable P_mu times a one-variable branching polynomial in the new
variable. Every branching coefficient is a Pieri coefficient at the dual
parameters, read off with conjugate and box-complement partitions.
"""

from __future__ import annotations

import threading
from collections.abc import Mapping
from fractions import Fraction
from typing import Any

from .errors import ErrorType, create_error, generic_only
from .logging import with_component
from .params import Family, ParamPoint
from .partitions import (
    Partition,
    complement,
    conjugate,
    d_count,
    pad,
    precedes,
    preceding_partitions,
    size,
)
from .pieri import PieriRequest
from .scalars import IMAG_UNIT, LimitScalar, limit_at_zero
from .sympoly import (
    ExponentMap,
    OneVarPoly,
    SymPoly,
    add_into,
    collect_mbasis,
    merge_with_univariate,
    onevar_basis,
)

logger = with_component("builder")


def dual_params(params: ParamPoint) -> ParamPoint:
    """The parameters at which the dual-side Pieri coefficients are evaluated."""
    family = params.family
    if family is Family.AW:
        dual_hat = params.get("t0_hat_dual")
        if dual_hat is None:
            raise create_error(
                ErrorType.VALIDATION,
                "aw branching needs t0_hat_dual with t0_hat_dual**2 = t0*t1*t2*t3/t",
            )
        return params.replace(
            q=params["t"],
            t=params["q"],
            t0_hat=dual_hat,
            t0_hat_dual=params["t0_hat"],
        )
    if family is Family.WHITTAKER:
        return params.replace(q=params["t"], t=params["q"])
    g = params["g"]
    if not g:
        raise create_error(
            ErrorType.UNSUPPORTED_PARAMETERS,
            f"{family.value} dual parameters need g != 0",
        )
    return params.map(lambda value: value / g).replace(g=1 / g)


def _sign(exponent: int) -> int:
    return -1 if exponent % 2 else 1


def _prefactor(params: ParamPoint, k: int, boxes: int, m: int) -> Any:
    """Sign and power of g in front of the dual Pieri coefficient.

    boxes = |lam| - |mu| can be negative under force.
    """
    one = params.one
    family = params.family
    if family is Family.WILSON:
        return one * _sign(boxes + m) * params["g"] ** (2 * (boxes - k))
    if family is Family.CHAHN:
        return one * IMAG_UNIT**m * _sign(boxes) * params["g"] ** (boxes - k)
    if family is Family.JACOBI:
        return one * 4**m * _sign(boxes)
    return one * _sign(k + boxes)


def _dual_pieri(req: PieriRequest) -> Any:
    from .hermite_limit import pieri_routed

    return pieri_routed(req)


@generic_only
def branch_coeffs(
    lam: Partition, mu: Partition, n: int, params: ParamPoint, *, force: bool = False
) -> list[Any]:
    """B^0..B^d for lam in Lambda_{n+1} over mu in Lambda_n.

    With ``force`` the formula is evaluated for every k in 0..lam_1 even when
    mu does not precede lam, as long as the box complements exist.
    """
    if len(lam) > n + 1 or len(mu) > n:
        raise create_error(
            ErrorType.INVALID_PARTITION,
            f"need lam in Lambda_{n + 1} and mu in Lambda_{n}, got "
            f"{list(lam)} and {list(mu)}",
        )
    m = lam[0] if lam else 0
    if m == 0:
        if mu:
            raise create_error(
                ErrorType.INVALID_PARTITION, f"{list(mu)} does not fit under ()"
            )
        return [params.one]
    if force:
        top = m
    elif precedes(mu, lam, n):
        top = d_count(lam, mu)
    else:
        raise create_error(
            ErrorType.INVALID_PARTITION,
            f"{list(mu)} does not precede {list(lam)} in the branching order",
        )
    source = complement(n, m, conjugate(mu))
    target = complement(n + 1, m, conjugate(lam))
    dual = dual_params(params)
    boxes = size(lam) - size(mu)
    coeffs = []
    for k in range(top + 1):
        request = PieriRequest(params.family, source, target, m, m - k, dual)
        coeffs.append(_prefactor(params, k, boxes, m) * _dual_pieri(request))
    return coeffs


def branch_poly(
    lam: Partition, mu: Partition, n: int, params: ParamPoint
) -> OneVarPoly:
    """Sum of B^k times the k-th one-variable basis element, in y."""
    total = OneVarPoly(())
    for k, coeff in enumerate(branch_coeffs(lam, mu, n, params)):
        if coeff:
            total = total + onevar_basis(params.family, k, params).scale(coeff)
    return total


class Builder:
    """Builds and caches P_mu level by level for one parameter point.

    The caches are the only shared state; reads and inserts go through a lock
    and concurrent misses on the same key compute identical values.
    """

    def __init__(self, params: ParamPoint) -> None:
        if params.family is Family.WHITTAKER and params["t"]:
            raise create_error(
                ErrorType.VALIDATION, "whittaker polynomials are built at t = 0"
            )
        self.params = params
        self._lock = threading.Lock()
        self._polys: dict[tuple[int, Partition], SymPoly] = {}
        self._branches: dict[tuple[int, Partition, Partition], OneVarPoly] = {}

    def branch(self, lam: Partition, mu: Partition, n: int) -> OneVarPoly:
        key = (n, lam, mu)
        with self._lock:
            cached = self._branches.get(key)
        if cached is not None:
            return cached
        value = branch_poly(lam, mu, n, self.params)
        with self._lock:
            return self._branches.setdefault(key, value)

    def build(self, lam: Partition, n: int) -> SymPoly:
        pad(lam, n)
        key = (n, lam)
        with self._lock:
            cached = self._polys.get(key)
        if cached is not None:
            return cached
        if n == 0:
            value = SymPoly.constant(0, self.params.one)
        else:
            total: ExponentMap = {}
            for mu in preceding_partitions(lam, n - 1):
                lower = self.build(mu, n - 1)
                branch = self.branch(lam, mu, n - 1)
                add_into(total, merge_with_univariate(lower, branch))
            value = collect_mbasis(total, n)
            logger.debug(
                "Built polynomial",
                family=self.params.family.value,
                lam=list(lam),
                n=n,
                terms=len(value.terms),
            )
        with self._lock:
            return self._polys.setdefault(key, value)


_BUILDERS: dict[tuple[Any, ...], Builder] = {}
_BUILDERS_LOCK = threading.Lock()


def get_builder(params: ParamPoint) -> Builder:
    key = params.cache_key()
    with _BUILDERS_LOCK:
        builder = _BUILDERS.get(key)
        if builder is None:
            builder = Builder(params)
            _BUILDERS[key] = builder
        return builder


def clear_builders() -> None:
    with _BUILDERS_LOCK:
        _BUILDERS.clear()


@generic_only
def build(family: Family, lam: Partition, n: int, params: ParamPoint) -> SymPoly:
    """P_lam in n variables, monic and triangular in the m-basis."""
    if params.family is not family:
        raise create_error(
            ErrorType.VALIDATION,
            f"parameters belong to {params.family.value}, not {family.value}",
        )
    return get_builder(params).build(lam, n)


def default_shift(params: ParamPoint) -> dict[str, Fraction]:
    """Distinct directions for every parameter, so the line leaves any hyperplane."""
    return {
        name: Fraction(index + 1, index + 2)
        for index, (name, _) in enumerate(params.values)
    }


def build_regularized(
    lam: Partition,
    n: int,
    params: ParamPoint,
    shift: Mapping[str, Fraction] | None = None,
) -> SymPoly:
    """P_lam at a point where some Pieri denominator vanishes.

    Every parameter p moves to p + beta * shift[p]; the polynomial is built
    over the rational functions of beta and each coefficient is sent to its
    value at beta = 0.
    """
    if params.family in (Family.AW, Family.WHITTAKER, Family.HERMITE):
        raise create_error(
            ErrorType.UNSUPPORTED_PARAMETERS,
            f"regularized builds are not available for {params.family.value}",
        )
    directions = default_shift(params) if shift is None else dict(shift)
    beta = LimitScalar.beta()
    moved = ParamPoint(
        params.family,
        tuple(
            (name, LimitScalar.constant(value) + beta * directions.get(name, 0))
            for name, value in params.values
        ),
    )
    formal = build(params.family, lam, n, moved)
    logger.debug("Regularized build", family=params.family.value, lam=list(lam), n=n)
    return formal.map_coefficients(limit_at_zero)
