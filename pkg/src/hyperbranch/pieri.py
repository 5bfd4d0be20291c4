"""Pieri coefficients and generator polynomials for every family.

A Pieri coefficient is ``(p_lam / p_mu) * V * U`` with per-family formulas
for the principal specialization ``p``, the displacement factor ``V`` and the
signed sum ``U``. The product-shaped families share one driver built from
four kernels: a single-index factor, a pair factor, a cross factor against
fixed indices, and ``p`` itself.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from math import comb
from typing import Any

from .errors import ErrorType, create_error, generic_only
from .params import HAT_COUNT, Family, ParamPoint, whittaker_limit_point
from .partitions import Partition, index_sets, pad, proximity, size
from .scalars import IMAG_UNIT, pochhammer, q_pochhammer
from .sympoly import SymPoly

type Signs = dict[int, int]


@dataclass(frozen=True, slots=True)
class PieriRequest:
    """One coefficient of E_r * P_lam expanded in the P basis."""

    family: Family
    lam: Partition
    mu: Partition
    n: int
    r: int
    params: ParamPoint


class _Formulas:
    """Shared V/U driver over single, pair and cross kernels.

    Indices are 1-based. ``signs`` maps each moving index to +1 or -1.
    """

    def __init__(self, params: ParamPoint, n: int) -> None:
        self.params = params
        self.n = n
        self.one = params.one

    def principal(self, lam: Partition) -> Any:
        raise NotImplementedError

    def single(self, lam: tuple[int, ...], j: int, e: int) -> Any:
        raise NotImplementedError

    def pair(
        self, lam: tuple[int, ...], j: int, e: int, k: int, f: int, in_sum: bool
    ) -> Any:
        raise NotImplementedError

    def cross(self, lam: tuple[int, ...], j: int, e: int, k: int) -> Any:
        raise NotImplementedError

    def _moving_product(
        self, lam: tuple[int, ...], signs: Signs, fixed: list[int], in_sum: bool
    ) -> Any:
        result = self.one
        moving = sorted(signs)
        for j in moving:
            result = result * self.single(lam, j, signs[j])
        for j, k in combinations(moving, 2):
            result = result * self.pair(lam, j, signs[j], k, signs[k], in_sum)
        for j in moving:
            for k in fixed:
                result = result * self.cross(lam, j, signs[j], k)
        return result

    def v(self, lam: Partition, signs: Signs) -> Any:
        padded = pad(lam, self.n)
        fixed = [j for j in range(1, self.n + 1) if j not in signs]
        return self._moving_product(padded, signs, fixed, in_sum=False)

    def u(self, lam: Partition, block: list[int], p: int) -> Any:
        if p == 0:
            return self.one
        padded = pad(lam, self.n)
        total = self.one * 0
        for chosen in combinations(sorted(block), p):
            rest = [k for k in block if k not in chosen]
            for choice in product((1, -1), repeat=p):
                signs = dict(zip(chosen, choice, strict=True))
                total = total + self._moving_product(padded, signs, rest, True)
        return total * (-1) ** p

    def coefficient(
        self, lam: Partition, mu: Partition, signs: Signs, fixed: list[int], p: int
    ) -> Any:
        """(p_lam / p_mu) * V * U, with p moving indices drawn from fixed."""
        ratio = self.principal(lam) / self.principal(mu)
        return ratio * self.v(lam, signs) * self.u(lam, fixed, p)


class _AskeyWilsonFormulas(_Formulas):
    def __init__(self, params: ParamPoint, n: int) -> None:
        super().__init__(params, n)
        self.q = params["q"]
        self.t = params["t"]
        self.t_hats = [params.t_hat(index) for index in range(4)]
        self.tau_hats = {j: params.tau_hat(j, n) for j in range(1, n + 1)}

    def _shift(self, lam: tuple[int, ...], j: int, e: int) -> Any:
        return self.tau_hats[j] ** e * self.q ** (e * lam[j - 1])

    def principal(self, lam: Partition) -> Any:
        q, t = self.q, self.t
        padded = pad(lam, self.n)
        result = self.one
        for j in range(1, self.n + 1):
            part, tau_hat = padded[j - 1], self.tau_hats[j]
            for t_hat in self.t_hats:
                result = result * q_pochhammer(t_hat * tau_hat, q, part)
            result = result / (
                self.params.tau(j, self.n) ** part
                * q_pochhammer(tau_hat * tau_hat, q, 2 * part)
            )
        for j, k in combinations(range(1, self.n + 1), 2):
            plus = padded[j - 1] + padded[k - 1]
            minus = padded[j - 1] - padded[k - 1]
            prod_hat = self.tau_hats[j] * self.tau_hats[k]
            ratio_hat = self.tau_hats[j] / self.tau_hats[k]
            result = result * (
                q_pochhammer(t * prod_hat, q, plus)
                * q_pochhammer(t * ratio_hat, q, minus)
            )
            result = result / (
                q_pochhammer(prod_hat, q, plus) * q_pochhammer(ratio_hat, q, minus)
            )
        return result

    def single(self, lam: tuple[int, ...], j: int, e: int) -> Any:
        a = self._shift(lam, j, e)
        numerator = self.one
        for t_hat in self.t_hats:
            numerator = numerator * (1 - t_hat * a)
        return numerator / (self.params["t0"] * (1 - a * a) * (1 - a * a * self.q))

    def pair(
        self, lam: tuple[int, ...], j: int, e: int, k: int, f: int, in_sum: bool
    ) -> Any:
        x = self._shift(lam, j, e) * self._shift(lam, k, f)
        q, t = self.q, self.t
        denominator = (1 - x) * (1 - x * q)
        if in_sum:
            return (1 - t * x) * (1 - x * q / t) / denominator
        return (1 - t * x) * (1 - t * x * q) / (t * denominator)

    def cross(self, lam: tuple[int, ...], j: int, e: int, k: int) -> Any:
        a = self._shift(lam, j, e)
        b = self.tau_hats[k] * self.q ** lam[k - 1]
        t = self.t
        return (1 - t * a * b) * (1 - t * a / b) / (t * (1 - a * b) * (1 - a / b))


class _RationalFormulas(_Formulas):
    """Wilson, continuous Hahn and Jacobi share every kernel but the prefactor."""

    def __init__(self, params: ParamPoint, n: int) -> None:
        super().__init__(params, n)
        self.g = params["g"]
        self.g_hats = [params.g_hat(index) for index in range(HAT_COUNT[params.family])]
        self.rho_hats = {j: params.rho_hat(j, n) for j in range(1, n + 1)}

    def _prefactor(self, total: int) -> Any:
        family = self.params.family
        if family is Family.WILSON:
            return self.one * (-1) ** total
        if family is Family.CHAHN:
            return self.one * IMAG_UNIT**total
        return self.one * 4**total

    def _shift(self, lam: tuple[int, ...], j: int, e: int) -> Any:
        return e * (self.rho_hats[j] + lam[j - 1])

    def principal(self, lam: Partition) -> Any:
        g = self.g
        padded = pad(lam, self.n)
        result = self._prefactor(size(lam))
        for j in range(1, self.n + 1):
            part, rho_hat = padded[j - 1], self.rho_hats[j]
            for g_hat in self.g_hats:
                result = result * pochhammer(g_hat + rho_hat, part)
            result = result / pochhammer(2 * rho_hat, 2 * part)
        for j, k in combinations(range(1, self.n + 1), 2):
            plus = padded[j - 1] + padded[k - 1]
            minus = padded[j - 1] - padded[k - 1]
            total = self.rho_hats[j] + self.rho_hats[k]
            difference = self.rho_hats[j] - self.rho_hats[k]
            result = result * (
                pochhammer(g + total, plus) * pochhammer(g + difference, minus)
            )
            result = result / (pochhammer(total, plus) * pochhammer(difference, minus))
        return result

    def single(self, lam: tuple[int, ...], j: int, e: int) -> Any:
        a = self._shift(lam, j, e)
        numerator = self.one
        for g_hat in self.g_hats:
            numerator = numerator * (g_hat + a)
        return numerator / (2 * a * (1 + 2 * a))

    def pair(
        self, lam: tuple[int, ...], j: int, e: int, k: int, f: int, in_sum: bool
    ) -> Any:
        s = self._shift(lam, j, e) + self._shift(lam, k, f)
        g = self.g
        second = 1 - g + s if in_sum else 1 + g + s
        return (g + s) * second / (s * (1 + s))

    def cross(self, lam: tuple[int, ...], j: int, e: int, k: int) -> Any:
        a = self._shift(lam, j, e)
        b = self.rho_hats[k] + lam[k - 1]
        g = self.g
        return (g + a + b) * (g + a - b) / ((a + b) * (a - b))


class _ConfluentFormulas(_Formulas):
    """Laguerre and Hermite: kernels in g alone, with h or omega in the singles."""

    def __init__(self, params: ParamPoint, n: int) -> None:
        super().__init__(params, n)
        self.g = params["g"]

    def principal(self, lam: Partition) -> Any:
        g = self.g
        padded = pad(lam, self.n)
        result = self.one
        if self.params.family is Family.LAGUERRE:
            h = self.params["h"]
            result = (-self.params["omega"]) ** (-size(lam))
            for j in range(1, self.n + 1):
                result = result * pochhammer((self.n - j) * g + h, padded[j - 1])
        for j, k in combinations(range(1, self.n + 1), 2):
            gap = padded[j - 1] - padded[k - 1]
            result = result * pochhammer((1 + k - j) * g, gap)
            result = result / pochhammer((k - j) * g, gap)
        return result

    def single(self, lam: tuple[int, ...], j: int, e: int) -> Any:
        base = (self.n - j) * self.g + lam[j - 1]
        if self.params.family is Family.LAGUERRE:
            return base + self.params["h"] if e > 0 else base
        return self.one if e > 0 else base / (2 * self.params["omega"])

    def pair(
        self, lam: tuple[int, ...], j: int, e: int, k: int, f: int, in_sum: bool
    ) -> Any:
        if e == f:
            return self.one
        up, down = (j, k) if e > 0 else (k, j)
        g = self.g
        gap = (down - up) * g + lam[up - 1] - lam[down - 1]
        second = 1 - g / (gap + 1) if in_sum else 1 + g / (gap + 1)
        return (1 + g / gap) * second

    def cross(self, lam: tuple[int, ...], j: int, e: int, k: int) -> Any:
        g = self.g
        return 1 + e * g / ((k - j) * g + lam[j - 1] - lam[k - 1])

    def u(self, lam: Partition, block: list[int], p: int) -> Any:
        if self.params.family is Family.HERMITE and p > 0:
            raise create_error(
                ErrorType.UNSUPPORTED_FAMILY,
                "hermite has no closed-form U factor",
            )
        return super().u(lam, block, p)


class _WhittakerFormulas(_Formulas):
    """Pieri data at q = 0, read off the Askey-Wilson formulas as q -> 0.

    The Askey-Wilson kernels are evaluated over the rational functions of beta
    at ``whittaker_limit_point`` and each value is taken at beta = 0. A single
    factor may diverge where the whole coefficient does not, so ``coefficient``
    takes the limit of the full product.
    """

    def __init__(self, params: ParamPoint, n: int) -> None:
        super().__init__(params, n)
        self.formal = _AskeyWilsonFormulas(whittaker_limit_point(params), n)

    def principal(self, lam: Partition) -> Any:
        return self.formal.principal(lam).limit_at_zero()

    def v(self, lam: Partition, signs: Signs) -> Any:
        return self.formal.v(lam, signs).limit_at_zero()

    def u(self, lam: Partition, block: list[int], p: int) -> Any:
        return self.formal.u(lam, block, p).limit_at_zero()

    def coefficient(
        self, lam: Partition, mu: Partition, signs: Signs, fixed: list[int], p: int
    ) -> Any:
        return self.formal.coefficient(lam, mu, signs, fixed, p).limit_at_zero()


def formulas_for(params: ParamPoint, n: int) -> _Formulas:
    family = params.family
    if family is Family.AW:
        return _AskeyWilsonFormulas(params, n)
    if family is Family.WHITTAKER:
        return _WhittakerFormulas(params, n)
    if family in (Family.WILSON, Family.CHAHN, Family.JACOBI):
        return _RationalFormulas(params, n)
    return _ConfluentFormulas(params, n)


def _signs(lam: Partition, mu: Partition, n: int) -> Signs:
    sets = index_sets(lam, mu, n)
    return {j: sets.eps[j - 1] for j in sorted(sets.J)}


@generic_only
def principal_special(
    family: Family, lam: Partition, n: int, params: ParamPoint
) -> Any:
    """The principal specialization value p_lam."""
    _check_family(family, params)
    return formulas_for(params, n).principal(lam)


@generic_only
def v_factor(
    family: Family,
    lam: Partition,
    jplus: frozenset[int],
    jminus: frozenset[int],
    n: int,
    params: ParamPoint,
) -> Any:
    _check_family(family, params)
    signs: Signs = {j: 1 for j in jplus}
    signs.update({j: -1 for j in jminus})
    return formulas_for(params, n).v(lam, signs)


@generic_only
def u_factor(
    family: Family,
    lam: Partition,
    block: frozenset[int],
    p: int,
    n: int,
    params: ParamPoint,
) -> Any:
    """Signed sum over disjoint (I+, I-) inside block with p indices in total."""
    _check_family(family, params)
    if not 0 <= p <= len(block):
        raise create_error(
            ErrorType.VALIDATION, f"p={p} outside 0..{len(block)} for block {block}"
        )
    return formulas_for(params, n).u(lam, sorted(block), p)


@generic_only
def pieri_coeff(req: PieriRequest) -> Any:
    """C^{mu,n}_{lam,r}: the coefficient of P_mu in E_r * P_lam."""
    _check_family(req.family, req.params)
    lam, mu, n, r = req.lam, req.mu, req.n, req.r
    _check_request(lam, mu, n, r)
    one = req.params.one
    if r == 0:
        return one if lam == mu else one * 0
    if not proximity(lam, mu, r, n):
        return one * 0
    signs = _signs(lam, mu, n)
    if req.family is Family.HERMITE and len(signs) < r:
        raise create_error(
            ErrorType.HERMITE_GENERAL_CASE,
            f"hermite coefficient for {list(lam)} -> {list(mu)} with r={r} has "
            f"|J|={len(signs)} < r and no closed form",
        )
    formulas = formulas_for(req.params, n)
    fixed = [j for j in range(1, n + 1) if j not in signs]
    coeff = formulas.coefficient(lam, mu, signs, fixed, r - len(signs))
    if req.family is Family.LAGUERRE:
        coeff = coeff * (-req.params["omega"]) ** (-r)
    return coeff


def _check_family(family: Family, params: ParamPoint) -> None:
    if params.family is not family:
        raise create_error(
            ErrorType.VALIDATION,
            f"parameters belong to {params.family.value}, not {family.value}",
        )


def _check_request(lam: Partition, mu: Partition, n: int, r: int) -> None:
    if len(lam) > n or len(mu) > n:
        raise create_error(
            ErrorType.INVALID_PARTITION,
            f"{list(lam)} and {list(mu)} must have at most {n} parts",
        )
    if not 0 <= r <= n:
        raise create_error(ErrorType.VALIDATION, f"r={r} outside 0..{n}")


def complete_homogeneous(values: list[Any], degree: int, one: Any) -> Any:
    """h_degree(values) by the usual one-variable-at-a-time recursion."""
    table = [one] + [one * 0] * degree
    for value in values:
        for d in range(1, degree + 1):
            table[d] = table[d] + value * table[d - 1]
    return table[degree]


@generic_only
def generator_er(family: Family, r: int, n: int, params: ParamPoint) -> SymPoly:
    """E_r in the family's base variables, as a combination of m_(1^k)."""
    _check_family(family, params)
    if not 0 <= r <= n:
        raise create_error(ErrorType.VALIDATION, f"r={r} outside 0..{n}")
    one = params.one
    terms: dict[Partition, Any] = {}
    if family in (Family.AW, Family.WHITTAKER):
        if family is Family.WHITTAKER and params["q"]:
            raise create_error(
                ErrorType.VALIDATION, "whittaker generators are defined at q = 0"
            )
        taus = [params.tau(j, n) for j in range(r, n + 1)] if r else []
        shifted = [tau + 1 / tau for tau in taus]
        for k in range(r + 1):
            sign = (-1) ** (r + k)
            terms[(1,) * k] = complete_homogeneous(shifted, r - k, one) * sign
    elif family in (Family.WILSON, Family.CHAHN):
        rhos = [params.rho(j, n) for j in range(r, n + 1)] if r else []
        if family is Family.WILSON:
            rhos = [rho * rho for rho in rhos]
        for k in range(r + 1):
            coeff = complete_homogeneous(rhos, r - k, one) * (-1) ** r
            if family is Family.CHAHN:
                coeff = coeff * IMAG_UNIT**k
            terms[(1,) * k] = coeff
    elif family is Family.JACOBI:
        for k in range(r + 1):
            weight = comb(n - k, r - k) * (one / 2) ** (r - k) * (-one / 4) ** k
            terms[(1,) * k] = weight * (-1) ** r
    else:
        terms[(1,) * r] = one
    return SymPoly(n, terms)
