"""Exhaustive search over the divisors of x^n - 1.

Every monic divisor is a product of phi_m over a subset S of the divisors
of n. Writing it as prod (x^d - 1)^e(d) with e(d) = sum over m in S,
d | m of mu(m/d), only the d <= r factors survive modulo x^(r+1). The
search walks all subsets in Gray-code order, keeping that short exponent
vector up to date with one addition per step; the truncated series is
evaluated once per distinct exponent vector.
"""

from __future__ import annotations

import math
from concurrent.futures import Executor, ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Optional, Union

from .cyclotomic import DEFAULT_CAP, cyclotomic
from .errors import BudgetExceeded, CapExceeded
from .numtheory import FactoredInt, as_factored, divisors, moebius
from .polyring import IntPoly, TruncSeries, binomial_power_inplace, exact_div, mul

__all__ = [
    "DEFAULT_H_BUDGET",
    "DEFAULT_B_BUDGET",
    "DivisorSubset",
    "ExponentVector",
    "SearchResult",
    "exponent_vector",
    "divisor_poly",
    "divisor_poly_trunc",
    "big_B",
    "big_H",
    "height_profile",
]

DEFAULT_H_BUDGET = 1 << 20
DEFAULT_B_BUDGET = 1 << 14

IndexLike = Union[FactoredInt, int]


@dataclass(frozen=True)
class DivisorSubset:
    """Subset of the divisors of ``n``; bit i of ``mask`` is the i-th smallest divisor.

    Witness ties are broken by the lexicographically smallest ascending
    member list, so {1, 6} precedes {2, 3}.
    """

    n: FactoredInt
    mask: int

    @classmethod
    def from_members(cls, n: IndexLike, members: Iterable[int]) -> "DivisorSubset":
        n = as_factored(n)
        index = {d.value: i for i, d in enumerate(divisors(n))}
        mask = 0
        for m in members:
            if int(m) not in index:
                raise ValueError(f"{m} does not divide {n}")
            mask |= 1 << index[int(m)]
        return cls(n, mask)

    @classmethod
    def full(cls, n: IndexLike) -> "DivisorSubset":
        n = as_factored(n)
        return cls(n, (1 << len(divisors(n))) - 1)

    def members(self) -> list[FactoredInt]:
        return [d for i, d in enumerate(divisors(self.n)) if self.mask >> i & 1]

    def to_json(self) -> list[int]:
        return [d.value for d in self.members()]


@dataclass(frozen=True)
class ExponentVector:
    """Exponents e(d) with f = prod over d | n of (x^d - 1)^e(d)."""

    n: FactoredInt
    entries: dict[int, int]

    def __getitem__(self, d: int) -> int:
        return self.entries.get(int(d), 0)

    def nonzero(self) -> dict[int, int]:
        return {d: e for d, e in self.entries.items() if e}


def exponent_vector(s: DivisorSubset) -> ExponentVector:
    divs = divisors(s.n)
    members = s.members()
    entries = {}
    for d in divs:
        entries[d.value] = sum(moebius(m // d) for m in members if d.divides(m))
    return ExponentVector(s.n, entries)


def divisor_poly(s: DivisorSubset, cap: int = DEFAULT_CAP) -> IntPoly:
    """prod over m in S of phi_m, fully materialized."""
    if s.n.value > cap:
        raise CapExceeded(f"index {s.n} exceeds materialization cap {cap}")
    acc = IntPoly.one()
    for m in s.members():
        acc = mul(acc, cyclotomic(m, cap))
    return acc


def _series_from_exponents(order: int, small: Iterable[tuple[int, int]], negate: bool) -> list[int]:
    """prod (1 - x^d)^e truncated, negated when the total exponent sum is odd.

    (x^d - 1)^e = (-1)^e (1 - x^d)^e, and a dropped factor with d > order
    is (-1)^e as well, so ``negate`` carries the parity over all d | n.
    """
    c = [0] * (order + 1)
    c[0] = 1
    for d, e in small:
        binomial_power_inplace(c, d, e)
    return [-a for a in c] if negate else c


def divisor_poly_trunc(s: DivisorSubset, order: int) -> TruncSeries:
    """The divisor for S modulo x^(order+1), for any size of n."""
    ev = exponent_vector(s)
    small = [(d, e) for d, e in ev.entries.items() if d <= order and e]
    total = sum(ev.entries.values())
    return TruncSeries(order, _series_from_exponents(order, small, total % 2 == 1))


# -- Gray-code search ----------------------------------------------------------


@dataclass(frozen=True)
class SearchResult:
    n: FactoredInt
    r: Optional[int]
    value: int
    witness: DivisorSubset

    def to_json(self) -> dict:
        return {
            "n": self.n.value,
            "r": self.r,
            "value": self.value,
            "witness_subset": self.witness.to_json(),
        }

    @classmethod
    def from_json(cls, data: dict) -> "SearchResult":
        n = as_factored(data["n"])
        return cls(n, data["r"], data["value"], DivisorSubset.from_members(n, data["witness_subset"]))


def _plan(n: FactoredInt, order: int) -> tuple[list[int], list[tuple[int, ...]]]:
    """Small divisors d <= order and, per divisor m of n, the step mu(m/d)."""
    divs = divisors(n)
    small = [d for d in divs if d.value <= order]
    deltas = []
    for m in divs:
        deltas.append(tuple(moebius(m // d) if d.divides(m) else 0 for d in small))
    return [d.value for d in small], deltas


def _lex_less(a: int, b: int) -> bool:
    """Canonical order: ascending member lists compared lexicographically.

    At the lowest differing bit i, the mask holding i is smaller unless the
    other one stops there (is a prefix of it).
    """
    x = a ^ b
    if not x:
        return False
    above = ~((x & -x) * 2 - 1)
    if a & x & -x:
        return bool(b & above)
    return not a & above


def _lex_min(masks: Iterable[int]) -> int:
    best = None
    for m in masks:
        if best is None or _lex_less(m, best):
            best = m
    return best


def _walk(
    deltas: tuple[tuple[int, ...], ...],
    low_bits: int,
    prefix: int,
    winners: Optional[frozenset] = None,
) -> dict[tuple, int]:
    """Visit every mask ``prefix | g`` with g < 2^low_bits in Gray-code order.

    The state is (small exponents, phi_1 present); the total exponent sum
    equals [1 in S], so the sign only depends on bit 0. Without ``winners``
    returns one mask per state; with it, the canonically smallest mask for
    each state in ``winners``.
    """
    width = len(deltas[0]) if deltas else 0
    state = [0] * width
    for i, delta in enumerate(deltas):
        if prefix >> i & 1:
            for j in range(width):
                state[j] += delta[j]
    mask = prefix
    seen: dict[tuple, int] = {}
    key = tuple(state) + (mask & 1,)
    if winners is None or key in winners:
        seen[key] = mask
    for step in range(1, 1 << low_bits):
        bit = (step & -step).bit_length() - 1
        mask ^= 1 << bit
        delta = deltas[bit]
        if mask >> bit & 1:
            for j in range(width):
                state[j] += delta[j]
        else:
            for j in range(width):
                state[j] -= delta[j]
        key = tuple(state) + (mask & 1,)
        if winners is None:
            if key not in seen:
                seen[key] = mask
        elif key in winners:
            old = seen.get(key)
            if old is None or _lex_less(mask, old):
                seen[key] = mask
    return seen


def _merge(into: dict[tuple, int], part: dict[tuple, int]) -> None:
    for key, mask in part.items():
        old = into.get(key)
        if old is None or _lex_less(mask, old):
            into[key] = mask


def _collect_states(
    deltas: list[tuple[int, ...]],
    workers: int,
    executor: Optional[Executor],
    winners: Optional[frozenset] = None,
) -> dict[tuple, int]:
    nbits = len(deltas)
    split = 0
    if (workers > 1 or executor is not None) and nbits > 12:
        split = min(nbits - 8, max(1, math.ceil(math.log2(max(workers, 2)))) + 2)
    low = nbits - split
    prefixes = [h << low for h in range(1 << split)]
    tdeltas = tuple(deltas)
    k = len(prefixes)
    if split:
        own = executor is None
        pool = executor or ProcessPoolExecutor(max_workers=workers)
        try:
            parts = list(pool.map(_walk, [tdeltas] * k, [low] * k, prefixes, [winners] * k))
        finally:
            if own:
                pool.shutdown()
    else:
        parts = [_walk(tdeltas, low, prefix, winners) for prefix in prefixes]
    seen: dict[tuple, int] = {}
    for part in parts:
        _merge(seen, part)
    return seen


def _check_budget(n: FactoredInt, budget: int) -> None:
    count = len(divisors(n))
    if count >= 63 or (1 << count) > budget:
        raise BudgetExceeded(f"2^{count} subsets of divisors of {n} exceed budget {budget}")


def height_profile(
    n: IndexLike,
    r_max: int,
    budget: int = DEFAULT_H_BUDGET,
    workers: int = 1,
    executor: Optional[Executor] = None,
) -> list[SearchResult]:
    """H(r, n) with witnesses for every r = 0..r_max from a single walk."""
    n = as_factored(n)
    if r_max < 0:
        raise ValueError("r must be >= 0")
    _check_budget(n, budget)
    small, deltas = _plan(n, r_max)
    states = _collect_states(deltas, workers, executor)
    values = {}
    for key in states:
        coeffs = _series_from_exponents(r_max, zip(small, key[:-1]), bool(key[-1]))
        values[key] = [abs(a) for a in coeffs]
    top = [max(v[r] for v in values.values()) for r in range(r_max + 1)]
    winners = frozenset(k for k, v in values.items() if any(v[r] == top[r] for r in range(r_max + 1)))
    masks = _collect_states(deltas, workers, executor, winners)
    best = []
    for r in range(r_max + 1):
        mask = _lex_min(m for k, m in masks.items() if values[k][r] == top[r])
        best.append((top[r], mask))
    return [SearchResult(n, r, v, DivisorSubset(n, m)) for r, (v, m) in enumerate(best)]


def big_H(
    r: int,
    n: IndexLike,
    budget: int = DEFAULT_H_BUDGET,
    workers: int = 1,
    executor: Optional[Executor] = None,
) -> SearchResult:
    """max |coefficient r| over all divisors of x^n - 1, canonically smallest witness."""
    return height_profile(n, r, budget, workers, executor)[r]


def big_B(n: IndexLike, budget: int = DEFAULT_B_BUDGET, cap: int = DEFAULT_CAP) -> SearchResult:
    """max height over all divisors of x^n - 1, materializing each one."""
    n = as_factored(n)
    _check_budget(n, budget)
    if n.value > cap:
        raise CapExceeded(f"index {n} exceeds materialization cap {cap}")
    phis = [cyclotomic(d, cap) for d in divisors(n)]
    poly = IntPoly.one()
    mask = 0
    best, best_mask = 1, 0  # the empty product 1
    for step in range(1, 1 << len(phis)):
        bit = (step & -step).bit_length() - 1
        mask ^= 1 << bit
        if mask >> bit & 1:
            poly = mul(poly, phis[bit])
        else:
            poly = exact_div(poly, phis[bit])
        h = poly.height()
        if h > best or (h == best and _lex_less(mask, best_mask)):
            best, best_mask = h, mask
    return SearchResult(n, None, best, DivisorSubset(n, best_mask))
