"""Elementary number theory on factored integers.

Every index that can grow beyond machine range is carried as a
:class:`FactoredInt`, so nothing downstream ever has to factor a large
number. Plain ``int`` arguments are accepted wherever a ``FactoredInt``
is expected and are factored by trial division.
"""

from __future__ import annotations

import heapq
import threading
from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from functools import cached_property, total_ordering
from itertools import islice
from math import isqrt, prod
from typing import Iterable, Iterator, Union

__all__ = [
    "FactoredInt",
    "as_factored",
    "moebius",
    "divisors",
    "divisor_count",
    "distinct_prime_count",
    "radical",
    "euler_phi",
    "primorial",
    "is_prime",
    "next_prime",
    "primes_upto",
    "first_primes",
    "find_prime_cluster",
    "two_prime_squarefree_sequence",
    "iter_two_prime_squarefree",
    "primes_above",
]


def _tree_product(xs: list[int]) -> int:
    while len(xs) > 1:
        xs = [xs[i] * xs[i + 1] if i + 1 < len(xs) else xs[i] for i in range(0, len(xs), 2)]
    return xs[0] if xs else 1


@total_ordering
@dataclass(frozen=True, eq=False)
class FactoredInt:
    """A positive integer together with its prime factorization.

    ``factors`` is a tuple of ``(prime, exponent)`` pairs with strictly
    increasing primes and positive exponents. Primality of the entries is
    trusted, not re-checked. ``value`` is computed on first use, since
    witness orders can carry tens of thousands of primes.
    """

    factors: tuple[tuple[int, int], ...] = ()

    def __post_init__(self) -> None:
        pairs = tuple((int(p), int(e)) for p, e in self.factors)
        prev = 1
        for p, e in pairs:
            if p <= prev or e < 1:
                raise ValueError(f"bad factorization {pairs}")
            prev = p
        object.__setattr__(self, "factors", pairs)

    @cached_property
    def value(self) -> int:
        return _tree_product([p**e for p, e in self.factors])

    def at_most(self, bound: int) -> bool:
        """``value <= bound`` without building a huge value."""
        acc = 1
        for p, e in self.factors:
            acc *= p**e
            if acc > bound:
                return False
        return True

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[int, int]]) -> "FactoredInt":
        """Build from unsorted pairs, merging repeated primes."""
        acc: dict[int, int] = {}
        for p, e in pairs:
            if e:
                acc[p] = acc.get(p, 0) + e
        return cls(tuple(sorted(acc.items())))

    @classmethod
    def from_primes(cls, primes: Iterable[int]) -> "FactoredInt":
        return cls.from_pairs((p, 1) for p in primes)

    @classmethod
    def of(cls, n: int) -> "FactoredInt":
        """Factor a (modest) integer by trial division."""
        n = int(n)
        if n < 1:
            raise ValueError(f"expected a positive integer, got {n}")
        pairs = []
        for p in _trial_primes(n):
            if p * p > n:
                break
            if n % p == 0:
                e = 0
                while n % p == 0:
                    n //= p
                    e += 1
                pairs.append((p, e))
        if n > 1:
            pairs.append((n, 1))
        return cls(tuple(pairs))

    @classmethod
    def parse(cls, text: str) -> "FactoredInt":
        """Parse ``"2^1.3^1.5^1"`` (factored) or a plain decimal literal.

        ``"1"`` and the empty product ``""`` both give 1; a bare prime
        without exponent (``"2.3"``) is read as exponent 1.
        """
        text = text.strip()
        if "^" not in text and "." not in text:
            return cls.of(int(text)) if text else cls()
        pairs = []
        for part in text.split("."):
            base, _, exp = part.partition("^")
            pairs.append((int(base), int(exp) if exp else 1))
        return cls.from_pairs(pairs)

    # -- arithmetic ---------------------------------------------------------

    def __int__(self) -> int:
        return self.value

    def __index__(self) -> int:
        return self.value

    def __eq__(self, other: object) -> bool:
        if isinstance(other, FactoredInt):
            return self.factors == other.factors
        if isinstance(other, int):
            return self.at_most(other) and self.value == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.factors)

    def __lt__(self, other: Union["FactoredInt", int]) -> bool:
        return self.value < int(other)

    def __mul__(self, other: Union["FactoredInt", int]) -> "FactoredInt":
        other = as_factored(other)
        return FactoredInt.from_pairs(self.factors + other.factors)

    __rmul__ = __mul__

    def __floordiv__(self, other: Union["FactoredInt", int]) -> "FactoredInt":
        """Exact quotient; raises ValueError if ``other`` does not divide."""
        other = as_factored(other)
        acc = dict(self.factors)
        for p, e in other.factors:
            if acc.get(p, 0) < e:
                raise ValueError(f"{other.value} does not divide {self}")
            acc[p] -= e
        return FactoredInt.from_pairs(acc.items())

    def divides(self, other: Union["FactoredInt", int]) -> bool:
        other = as_factored(other)
        mine = dict(other.factors)
        return all(mine.get(p, 0) >= e for p, e in self.factors)

    def lcm(self, other: Union["FactoredInt", int]) -> "FactoredInt":
        acc = dict(self.factors)
        for p, e in as_factored(other).factors:
            acc[p] = max(acc.get(p, 0), e)
        return FactoredInt(tuple(sorted(acc.items())))

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    def exponent(self, p: int) -> int:
        for q, e in self.factors:
            if q == p:
                return e
        return 0

    def is_squarefree(self) -> bool:
        return all(e == 1 for _, e in self.factors)

    def to_json(self) -> list[list[int]]:
        return [[p, e] for p, e in self.factors]

    @classmethod
    def from_json(cls, data: Iterable[Iterable[int]]) -> "FactoredInt":
        return cls(tuple((int(p), int(e)) for p, e in data))

    def factored_str(self) -> str:
        return ".".join(f"{p}^{e}" for p, e in self.factors) or "1"

    def __str__(self) -> str:
        if self.at_most(1 << 64):
            return str(self.value)
        return self.factored_str()

    def __repr__(self) -> str:
        return f"FactoredInt({self.factored_str()})"


def as_factored(n: Union[FactoredInt, int]) -> FactoredInt:
    return n if isinstance(n, FactoredInt) else FactoredInt.of(n)


# -- primes ------------------------------------------------------------------


class _Sieve:
    """Sieve of Eratosthenes that grows on demand.

    Extension happens under a lock; readers only ever see a fully built
    prefix because ``primes`` is swapped in one assignment.
    """

    def __init__(self) -> None:
        self._lock = threading.Lock()
        self.limit = 1
        self.primes: list[int] = []
        self.extend(1 << 12)

    def extend(self, limit: int) -> None:
        if limit <= self.limit:
            return
        with self._lock:
            if limit <= self.limit:
                return
            limit = max(limit, 2 * self.limit)
            flags = bytearray([1]) * (limit + 1)
            flags[0:2] = b"\x00\x00"
            for p in range(2, isqrt(limit) + 1):
                if flags[p]:
                    flags[p * p :: p] = bytes(len(range(p * p, limit + 1, p)))
            self.primes = [i for i, f in enumerate(flags) if f]
            self.limit = limit

    def upto(self, limit: int) -> list[int]:
        self.extend(limit)
        primes = self.primes
        return primes[: bisect_right(primes, limit)]

    def first(self, k: int) -> list[int]:
        while len(self.primes) < k:
            self.extend(2 * self.limit)
        return self.primes[:k]

    def contains(self, n: int) -> bool:
        primes = self.primes
        i = bisect_left(primes, n)
        return i < len(primes) and primes[i] == n


_SIEVE = _Sieve()
_SIEVE_CAP = 1 << 22


def primes_upto(limit: int) -> list[int]:
    return _SIEVE.upto(limit)


def first_primes(k: int) -> list[int]:
    return _SIEVE.first(k)


def _trial_primes(n: int) -> Iterator[int]:
    root = isqrt(n)
    if root <= _SIEVE_CAP:
        yield from _SIEVE.upto(root)
        return
    yield from _SIEVE.upto(_SIEVE_CAP)
    d = _SIEVE_CAP + 1
    while d <= root:
        yield d
        d += 2 if d % 2 else 1


# Deterministic Miller-Rabin bases, valid for n < 3.3 * 10**24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_MR_LIMIT = 3_317_044_064_679_887_385_961_981


def _miller_rabin(n: int) -> bool:
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n <= _SIEVE.limit:
        return _SIEVE.contains(n)
    for p in _SIEVE.upto(1000):
        if n % p == 0:
            return False
    if n < _MR_LIMIT:
        return _miller_rabin(n)
    from sympy import isprime  # BPSW beyond the deterministic MR range

    return bool(isprime(n))


def next_prime(n: int) -> int:
    """Smallest prime strictly greater than ``n``."""
    c = max(n + 1, 2)
    while not is_prime(c):
        c += 1
    return c


def primes_above(lower: int) -> Iterator[int]:
    p = lower
    while True:
        p = next_prime(p)
        yield p


# -- arithmetic functions ----------------------------------------------------


def moebius(n: Union[FactoredInt, int]) -> int:
    n = as_factored(n)
    if not n.is_squarefree():
        return 0
    return -1 if len(n.factors) % 2 else 1


def divisors(n: Union[FactoredInt, int]) -> list[FactoredInt]:
    """All divisors of ``n`` in ascending order, each in factored form."""
    n = as_factored(n)
    out: list[tuple[tuple[int, int], ...]] = [()]
    for p, e in n.factors:
        out = [d + ((p, k),) if k else d for d in out for k in range(e + 1)]
    return sorted((FactoredInt(d) for d in out), key=int)


def divisor_count(n: Union[FactoredInt, int]) -> int:
    return prod(e + 1 for _, e in as_factored(n).factors)


def distinct_prime_count(n: Union[FactoredInt, int]) -> int:
    return len(as_factored(n).factors)


def radical(n: Union[FactoredInt, int]) -> FactoredInt:
    return FactoredInt(tuple((p, 1) for p, _ in as_factored(n).factors))


def euler_phi(n: Union[FactoredInt, int]) -> int:
    return prod((p - 1) * p ** (e - 1) for p, e in as_factored(n).factors)


def primorial(k: int) -> FactoredInt:
    """Product of the first ``k`` primes."""
    if k < 1:
        raise ValueError("primorial needs k >= 1")
    return FactoredInt.from_primes(first_primes(k))


def find_prime_cluster(t: int) -> list[int]:
    """First window of ``t`` consecutive primes with ``p1 + p2 > pt``.

    Windows start above ``t`` (``p1 > t``); for t = 3 this skips
    (3, 5, 7) and yields (5, 7, 11).
    """
    if t < 3:
        raise ValueError("a prime cluster needs t >= 3")
    i = 0
    while True:
        window = first_primes(i + t)[i:]
        if window[0] > t and window[0] + window[1] > window[-1]:
            return window
        i += 1


def iter_two_prime_squarefree(lower: int) -> Iterator[tuple[int, int]]:
    """Ascending products of two distinct primes above ``lower``, as (q1, q2)."""
    qs: list[int] = []
    gen = primes_above(lower)

    def q(i: int) -> int:
        while len(qs) <= i:
            qs.append(next(gen))
        return qs[i]

    heap = [(q(0) * q(1), 0, 1)]
    while True:
        _, i, j = heapq.heappop(heap)
        yield q(i), q(j)
        heapq.heappush(heap, (q(i) * q(j + 1), i, j + 1))
        if j == i + 1:
            heapq.heappush(heap, (q(i + 1) * q(i + 2), i + 1, i + 2))


def two_prime_squarefree_sequence(lower: int, count: int) -> list[int]:
    """The ``count`` smallest products ``q1 * q2`` of primes ``lower < q1 < q2``."""
    if lower < 1 or count < 1:
        raise ValueError("need lower >= 1 and count >= 1")
    return [a * b for a, b in islice(iter_two_prime_squarefree(lower), count)]
