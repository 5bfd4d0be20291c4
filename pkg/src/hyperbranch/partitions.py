"""Partition combinatorics for branching rules and Pieri formulas.

Partitions are tuples of weakly decreasing nonnegative integers in canonical
form (no trailing zeros). Operations that depend on an ambient number of
variables take it explicitly and pad with zeros; indices handed out in
``IndexSets`` are 1-based so they line up with the product formulas.
"""

from collections.abc import Iterable, Iterator
from dataclasses import dataclass
from itertools import product

from .errors import ErrorType, create_error

type Partition = tuple[int, ...]


def make_partition(parts: Iterable[int]) -> Partition:
    """Validate parts and return the canonical partition."""
    values = tuple(int(part) for part in parts)
    if any(part < 0 for part in values):
        raise create_error(
            ErrorType.INVALID_PARTITION, f"negative part in {list(values)}"
        )
    if any(a < b for a, b in zip(values, values[1:], strict=False)):
        raise create_error(
            ErrorType.INVALID_PARTITION, f"parts not weakly decreasing: {list(values)}"
        )
    end = len(values)
    while end and values[end - 1] == 0:
        end -= 1
    return values[:end]


def pad(lam: Partition, n: int) -> tuple[int, ...]:
    """Return lam as a vector of length n."""
    if len(lam) > n:
        raise create_error(
            ErrorType.INVALID_PARTITION,
            f"partition {list(lam)} has more than {n} nonzero parts",
        )
    return lam + (0,) * (n - len(lam))


def size(lam: Iterable[int]) -> int:
    return sum(lam)


def graded_key(lam: Partition) -> tuple[int, tuple[int, ...]]:
    """Sort key: by size, then reverse-lexicographic within a size."""
    return sum(lam), tuple(-part for part in lam)


def conjugate(lam: Partition) -> Partition:
    if not lam:
        return ()
    return tuple(sum(1 for part in lam if part >= j) for j in range(1, lam[0] + 1))


def contains(lam: Partition, mu: Partition) -> bool:
    """True iff mu is a subdiagram of lam."""
    if len(mu) > len(lam):
        return False
    return all(b <= a for a, b in zip(lam, mu, strict=False))


def dominance_leq(mu: Partition, lam: Partition, n: int) -> bool:
    """Nonhomogeneous dominance: every partial sum of mu is bounded by lam's."""
    total_mu = total_lam = 0
    for b, a in zip(pad(mu, n), pad(lam, n), strict=True):
        total_mu += b
        total_lam += a
        if total_mu > total_lam:
            return False
    return True


def is_horizontal_strip(lam: Partition, mu: Partition) -> bool:
    """True iff mu is contained in lam and the parts interlace."""
    length = max(len(lam), len(mu))
    outer = pad(lam, length) + (0,)
    inner = pad(mu, length)
    return all(outer[j] >= inner[j] >= outer[j + 1] for j in range(length))


def is_vertical_strip(lam: Partition, mu: Partition) -> bool:
    length = max(len(lam), len(mu))
    return all(
        b <= a <= b + 1
        for a, b in zip(pad(lam, length), pad(mu, length), strict=True)
    )


def precedes(mu: Partition, lam: Partition, n: int) -> bool:
    """The branching order: mu in Lambda_n sits under lam in Lambda_{n+1}.

    Searches for an intermediate nu with lam/nu and nu/mu both horizontal strips.
    """
    if len(mu) > n or len(lam) > n + 1 or not contains(lam, mu):
        return False
    lam_padded = pad(lam, n + 1)
    mu_padded = pad(mu, n)
    ranges = [range(mu_padded[j], lam_padded[j] + 1) for j in range(n)]
    for candidate in product(*ranges):
        nu = _canonical_or_none(candidate)
        if nu is None:
            continue
        if is_horizontal_strip(lam, nu) and is_horizontal_strip(nu, mu):
            return True
    return False


def proximity(lam: Partition, mu: Partition, r: int, n: int) -> bool:
    """The Pieri relation mu ~_r lam.

    True iff some nu below both has lam/nu and mu/nu vertical strips with at
    most r boxes in total. r = 0 degenerates to equality.
    """
    if len(lam) > n or len(mu) > n:
        return False
    lam_padded = pad(lam, n)
    mu_padded = pad(mu, n)
    choices = []
    for a, b in zip(lam_padded, mu_padded, strict=True):
        low = min(a, b)
        choices.append([v for v in (low - 1, low) if v >= 0])
    for candidate in product(*choices):
        nu = _canonical_or_none(candidate)
        if nu is None:
            continue
        if not (is_vertical_strip(lam, nu) and is_vertical_strip(mu, nu)):
            continue
        if size(lam) + size(mu) - 2 * size(nu) <= r:
            return True
    return False


@dataclass(frozen=True, slots=True)
class IndexSets:
    """Positions where two partitions differ, with 1-based indices."""

    J: frozenset[int]
    Jc: frozenset[int]
    Jplus: frozenset[int]
    Jminus: frozenset[int]
    eps: tuple[int, ...]


def index_sets(lam: Partition, mu: Partition, n: int) -> IndexSets:
    lam_padded = pad(lam, n)
    mu_padded = pad(mu, n)
    eps = tuple(
        (b > a) - (b < a) for a, b in zip(lam_padded, mu_padded, strict=True)
    )
    jplus = frozenset(j + 1 for j, e in enumerate(eps) if e > 0)
    jminus = frozenset(j + 1 for j, e in enumerate(eps) if e < 0)
    J = jplus | jminus
    return IndexSets(
        J=J,
        Jc=frozenset(range(1, n + 1)) - J,
        Jplus=jplus,
        Jminus=jminus,
        eps=eps,
    )


def complement(m: int, n: int, mu: Partition) -> Partition:
    """The partition m^n - mu, i.e. (m - mu_n, ..., m - mu_1)."""
    if len(mu) > n or (mu and mu[0] > m):
        raise create_error(
            ErrorType.INVALID_PARTITION,
            f"partition {list(mu)} does not fit in the {m}^{n} box",
        )
    padded = pad(mu, n)
    return make_partition(m - padded[n - 1 - j] for j in range(n))


def d_count(lam: Partition, mu: Partition) -> int:
    """Number of columns where lam' exceeds mu' by exactly one."""
    n = max(len(mu), len(lam) - 1, 0)
    if not precedes(mu, lam, n):
        raise create_error(
            ErrorType.INVALID_PARTITION,
            f"{list(mu)} does not precede {list(lam)} in the branching order",
        )
    m = lam[0] if lam else 0
    lam_conj = pad(conjugate(lam), m)
    mu_conj = pad(conjugate(mu), m)
    return sum(1 for a, b in zip(lam_conj, mu_conj, strict=True) if a == b + 1)


def enumerate_subpartitions(m: int, n: int) -> list[Partition]:
    """All partitions with at most m parts, each at most n, in graded order."""
    found = list(_bounded(m, n, None))
    return sorted(found, key=graded_key)


def partitions_up_to(n: int, max_size: int) -> list[Partition]:
    """All partitions with at most n parts and size at most max_size."""
    found = list(_bounded(n, max_size, max_size))
    return sorted(found, key=graded_key)


def preceding_partitions(lam: Partition, n: int) -> list[Partition]:
    """All mu in Lambda_n with mu preceding lam in Lambda_{n+1}."""
    lam_padded = pad(lam, n + 2)
    ranges = [range(lam_padded[j + 2], lam_padded[j] + 1) for j in range(n)]
    found = []
    for candidate in product(*ranges):
        mu = _canonical_or_none(candidate)
        if mu is not None and precedes(mu, lam, n):
            found.append(mu)
    return sorted(found, key=graded_key)


def proximate_partitions(lam: Partition, r: int, n: int) -> list[Partition]:
    """All mu in Lambda_n with mu ~_r lam."""
    choices = [[v for v in (a - 1, a, a + 1) if v >= 0] for a in pad(lam, n)]
    found = []
    for candidate in product(*choices):
        mu = _canonical_or_none(candidate)
        if mu is not None and proximity(lam, mu, r, n):
            found.append(mu)
    return sorted(found, key=graded_key)


def _canonical_or_none(values: Iterable[int]) -> Partition | None:
    values = tuple(values)
    if any(a < b for a, b in zip(values, values[1:], strict=False)):
        return None
    return make_partition(values)


def _bounded(parts: int, largest: int, max_size: int | None) -> Iterator[Partition]:
    if parts == 0 or largest == 0 or max_size == 0:
        yield ()
        return
    yield ()
    top = largest if max_size is None else min(largest, max_size)
    for first in range(1, top + 1):
        rest_size = None if max_size is None else max_size - first
        for rest in _bounded(parts - 1, first, rest_size):
            yield (first, *rest)
