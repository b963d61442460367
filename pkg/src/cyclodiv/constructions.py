"""Witness generators: explicit divisors of x^l - 1 with prescribed coefficients.

A witness is a :class:`CycProduct`, a set of distinct cyclotomic indices.
Distinct indices give coprime irreducible factors, each dividing
x^l - 1 for l the lcm of the indices, so the product is a divisor of
x^l - 1 with exactly ``len(indices)`` irreducible factors. Indices are
kept factored; only truncations are ever computed for large ones.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from functools import cached_property
from itertools import islice
from typing import Iterable, Optional, Sequence, Union

from .cyclotomic import apply_cyclotomic_trunc, cyclotomic
from .errors import CapExceeded, NotDivisible, VerificationFailed
from .numtheory import (
    FactoredInt,
    as_factored,
    distinct_prime_count,
    divisors,
    find_prime_cluster,
    iter_two_prime_squarefree,
    moebius,
    next_prime,
    primes_above,
    primorial,
)
from .polyring import IntPoly, TruncSeries, exact_div, mul

__all__ = [
    "CycProduct",
    "WitnessReport",
    "trunc_of_product",
    "building_block_d",
    "building_block_dprime",
    "prefix_witness",
    "suzuki_witness",
    "suzuki_table",
    "extremal_fk",
    "extremal_coeff",
    "counting_identity",
    "DEFAULT_MATERIALIZE_CAP",
]

DEFAULT_MATERIALIZE_CAP = 10**5

IndexLike = Union[FactoredInt, int]


@dataclass(frozen=True)
class CycProduct:
    """prod of phi_m over a set of distinct indices m."""

    indices: tuple[FactoredInt, ...]

    def __post_init__(self) -> None:
        idx = tuple(as_factored(m) for m in self.indices)
        if len(set(idx)) != len(idx):
            raise ValueError("cyclotomic indices must be pairwise distinct")
        object.__setattr__(self, "indices", idx)

    @classmethod
    def of(cls, indices: Iterable[IndexLike]) -> "CycProduct":
        return cls(tuple(as_factored(m) for m in indices))

    def __len__(self) -> int:
        return len(self.indices)

    @cached_property
    def order_l(self) -> FactoredInt:
        """lcm of the indices; the product divides x^order_l - 1."""
        acc: dict[int, int] = {}
        for m in self.indices:
            for p, e in m.factors:
                if acc.get(p, 0) < e:
                    acc[p] = e
        return FactoredInt(tuple(sorted(acc.items())))

    def index_values(self) -> set[int]:
        return {m.value for m in self.indices}

    def index_set(self) -> set[FactoredInt]:
        return set(self.indices)

    def trunc(self, order: int) -> TruncSeries:
        return trunc_of_product(self, order)

    def materialize(self, cap: int = DEFAULT_MATERIALIZE_CAP) -> IntPoly:
        if not self.order_l.at_most(cap):
            raise CapExceeded(f"order {self.order_l} exceeds cap {cap}")
        acc = IntPoly.one()
        for m in sorted(self.indices, key=int):
            acc = mul(acc, cyclotomic(m, cap))
        return acc

    def to_json(self) -> dict:
        return {
            "indices": [m.to_json() for m in self.indices],
            "order_l": self.order_l.to_json(),
        }


def trunc_of_product(p: CycProduct, order: int) -> TruncSeries:
    """prod of phi_m modulo x^(order+1) over the indices of ``p``."""
    c = [0] * (order + 1)
    c[0] = 1
    flips = 0
    for m in p.indices:
        flips += apply_cyclotomic_trunc(c, m)
    if flips % 2:
        c = [-a for a in c]
    return TruncSeries(order, c)


@dataclass
class WitnessReport:
    product: CycProduct
    truncation: TruncSeries
    claims: list[tuple[str, bool]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(passed for _, passed in self.claims)

    def claim(self, name: str) -> bool:
        for n, passed in self.claims:
            if n == name:
                return passed
        raise KeyError(name)

    def to_json(self) -> dict:
        out = self.product.to_json()
        out["truncation"] = list(self.truncation.coeffs)
        out["claims"] = [{"name": n, "pass": passed} for n, passed in self.claims]
        return out

    @classmethod
    def from_json(cls, data: dict) -> "WitnessReport":
        product = CycProduct(tuple(FactoredInt.from_json(m) for m in data["indices"]))
        if product.order_l.to_json() != data["order_l"]:
            raise ValueError("order_l does not match the indices")
        trunc = data["truncation"]
        return cls(
            product,
            TruncSeries(len(trunc) - 1, trunc),
            [(c["name"], bool(c["pass"])) for c in data["claims"]],
        )


def _structural_claims(product: CycProduct) -> list[tuple[str, bool]]:
    order_l = dict(product.order_l.factors)
    divides = all(all(order_l.get(p, 0) >= e for p, e in m.factors) for m in product.indices)
    return [
        ("indices pairwise distinct", len(product.index_set()) == len(product)),
        ("every index divides order_l", divides),
    ]


def _materialized_claim(product: CycProduct, cap: int) -> list[tuple[str, bool]]:
    if not product.order_l.at_most(cap):
        return []
    poly = product.materialize(cap)
    try:
        exact_div(IntPoly.x_pow_minus_1(product.order_l.value), poly)
        ok = True
    except NotDivisible:
        ok = False
    return [("materialized product divides x^l - 1", ok)]


# -- building blocks ---------------------------------------------------------


class _BlockSequence:
    """Two-prime squarefree multipliers for blocks of one degree, cached."""

    def __init__(self, floor: int) -> None:
        self._gen = iter_two_prime_squarefree(floor)
        self._items: list[tuple[int, int]] = []
        self._lock = threading.Lock()

    def __getitem__(self, j: int) -> tuple[int, int]:
        with self._lock:
            while len(self._items) <= j:
                self._items.append(next(self._gen))
            return self._items[j]


_SEQUENCES: dict[int, _BlockSequence] = {}
_SEQ_LOCK = threading.Lock()


def _sequence(n: int) -> _BlockSequence:
    # primes above n that do not divide 2n: only 2 is excluded, at n = 1
    floor = max(n, 2)
    with _SEQ_LOCK:
        if floor not in _SEQUENCES:
            _SEQUENCES[floor] = _BlockSequence(floor)
        return _SEQUENCES[floor]


def _block_divisors(kind: str, n: int) -> list[FactoredInt]:
    if kind == "d":
        return divisors(n)
    return [d for d in divisors(2 * n) if n % d.value]


def _block(kind: str, n: int, m: int, exclude: set[FactoredInt]) -> tuple[int, CycProduct]:
    """First block at position >= m avoiding ``exclude``; returns (position, block)."""
    if n < 1 or m < 1:
        raise ValueError("building blocks need n >= 1 and m >= 1")
    ds = _block_divisors(kind, n)
    seq = _sequence(n)
    j = m
    while True:
        q1, q2 = seq[j - 1]
        idx = [FactoredInt(d.factors + ((q1, 1), (q2, 1))) for d in ds]
        if not any(i in exclude for i in idx):
            break
        j += 1
    block = CycProduct(tuple(idx))
    expected = [0] * (n + 1)
    expected[0] = 1
    expected[n] = -1 if kind == "d" else 1
    if trunc_of_product(block, n).coeffs != tuple(expected):
        raise VerificationFailed(f"{kind}-block of degree {n} at position {j}")
    return j, block


def _exclusions(exclude: Optional[Iterable[IndexLike]]) -> set[FactoredInt]:
    return {as_factored(i) for i in exclude or ()}


def building_block_d(n: int, m: int, exclude: Optional[Iterable[IndexLike]] = None) -> CycProduct:
    """Divisor congruent to 1 - x^n modulo x^(n+1), indices n_m * d for d | n."""
    return _block("d", n, m, _exclusions(exclude))[1]


def building_block_dprime(
    n: int, m: int, exclude: Optional[Iterable[IndexLike]] = None
) -> CycProduct:
    """Divisor congruent to 1 + x^n modulo x^(n+1), indices n_m * d for d | 2n, d not | n."""
    return _block("dprime", n, m, _exclusions(exclude))[1]


# -- prescribed leading coefficients -----------------------------------------


def prefix_witness(
    target: Sequence[int], materialize_cap: int = DEFAULT_MATERIALIZE_CAP
) -> WitnessReport:
    """Divisor whose coefficients 1..r equal ``target``.

    Starts from blocks of degree 1 (or one degree-2 block when the first
    target is 0), then at each degree k multiplies in |a_k - target_k|
    fresh blocks of degree k, which shift coefficient k by one each and
    leave lower coefficients alone.
    """
    target = [int(t) for t in target]
    r = len(target)
    if r < 1:
        raise ValueError("target must have at least one entry")
    used: set[FactoredInt] = set()
    indices: list[FactoredInt] = []
    cursors: dict[tuple[str, int], int] = {}
    # running truncation is (-1)^flips * running
    running = [1] + [0] * r
    flips = 0

    def add(kind: str, k: int, count: int) -> None:
        nonlocal flips
        for _ in range(count):
            j, block = _block(kind, k, cursors.get((kind, k), 1), used)
            cursors[(kind, k)] = j + 1
            used.update(block.indices)
            indices.extend(block.indices)
            for m in block.indices:
                flips += apply_cyclotomic_trunc(running, m)

    first = target[0]
    if first == 0:
        add("d", 2, 1)
    elif first > 0:
        add("dprime", 1, first)
    else:
        add("d", 1, -first)
    for k in range(2, r + 1):
        current = -running[k] if flips % 2 else running[k]
        diff = current - target[k - 1]
        if diff > 0:
            add("d", k, diff)
        elif diff < 0:
            add("dprime", k, -diff)

    product = CycProduct(tuple(indices))
    trunc = trunc_of_product(product, r)
    claims = _structural_claims(product)
    claims.append(("truncation matches target", list(trunc.coeffs[1:]) == target))
    claims.append(("constant term is +-1", trunc.coeffs[0] in (1, -1)))
    claims.extend(_materialized_claim(product, materialize_cap))
    return WitnessReport(product, trunc, claims)


# -- every integer in [-n, n] as a coefficient -------------------------------


def suzuki_table(primes: Sequence[int]) -> list[int]:
    """Coefficients 0..p_t of phi_N, N = prod(primes), for a prime cluster.

    1 below p_1, then 1 - k on [p_k, p_{k+1}), and 1 - t at p_t.
    """
    t = len(primes)
    out = []
    for i in range(primes[-1] + 1):
        out.append(1 - sum(1 for p in primes if p <= i))
    assert out[-1] == 1 - t
    return out


def suzuki_witness(
    m: int, n: int, order: Optional[int] = None, max_order: Optional[int] = None
) -> WitnessReport:
    """Divisor with exactly ``m`` irreducible factors whose coefficients cover -n..n.

    With t the smallest odd integer above n + 1 and p_1 < ... < p_t a prime
    cluster, N = prod p_i: phi_{2N} = phi_N(-x) carries the signed table.
    Even m lifts it to phi_{2N}(x^p') = phi_{2Np'} phi_{2N}. Extra factors
    come in pairs phi_{q q'} phi_{q''} with all primes above 2Np', which are
    1 modulo x^(2Np').
    """
    if m < 1 or n < 1:
        raise ValueError("need m >= 1 and n >= 1")
    t = n + 2 if n % 2 == 1 else n + 3
    primes = find_prime_cluster(t)
    p = primes[-1]
    two_n = FactoredInt.from_primes([2] + list(primes))
    if m == 1:
        base = [two_n]
        p_prime = None
        pairs = 0
    else:
        p_prime = next_prime(p)
        if m % 2 == 0:
            base = [two_n * p_prime, two_n]
            pairs = m // 2 - 1
        else:
            base = [two_n]
            pairs = (m - 1) // 2
    stride = p_prime if m % 2 == 0 else 1
    if order is None:
        order = p * stride
    if max_order is not None and order > max_order:
        raise CapExceeded(f"truncation order {order} exceeds {max_order}")
    extra: list[FactoredInt] = []
    if pairs:
        bound = two_n.value * p_prime
        for q1, q2 in islice(iter_two_prime_squarefree(bound), pairs):
            extra.append(FactoredInt(((q1, 1), (q2, 1))))
        for q in islice(primes_above(bound), pairs):
            extra.append(FactoredInt(((q, 1),)))
    product = CycProduct(tuple(base + extra))
    trunc = trunc_of_product(product, order)

    signed = [(-1) ** i * c for i, c in enumerate(suzuki_table(primes))]
    expected = [0] * (order + 1)
    for i, c in enumerate(signed):
        if i * stride <= order:
            expected[i * stride] = c
    covered = set(trunc.coeffs[1:])
    claims = _structural_claims(product)
    claims.append(("exactly m irreducible factors", len(product) == m))
    claims.append(("coefficients cover -n..n", covered.issuperset(range(-n, n + 1))))
    claims.append(("truncation equals signed cluster table", list(trunc.coeffs) == expected))
    return WitnessReport(product, trunc, claims)


# -- extremal divisors over primorials ---------------------------------------


def extremal_fk(k: int) -> CycProduct:
    """prod of phi_m over the divisors m of the k-th primorial with mu(m) = 1."""
    return CycProduct(tuple(m for m in divisors(primorial(k)) if moebius(m) == 1))


def extremal_coeff(k: int, r: int) -> int:
    return trunc_of_product(extremal_fk(k), r)[r]


def counting_identity(k: int, d: IndexLike) -> tuple[int, int]:
    """(#{m | n_k : d | m, mu(m) = 1}, 2^(k - v(d) - 1)) for d | n_k, d != n_k."""
    n = primorial(k)
    d = as_factored(d)
    if not d.divides(n) or d == n:
        raise ValueError("d must be a proper divisor of the primorial")
    count = sum(1 for m in divisors(n) if moebius(m) == 1 and d.divides(m))
    return count, 1 << (k - distinct_prime_count(d) - 1)
