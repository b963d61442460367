"""Cyclotomic polynomials: full, recursive, and truncated at huge indices."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import isqrt
from typing import Union

from .errors import CapExceeded
from .numtheory import (
    FactoredInt,
    as_factored,
    divisors,
    is_prime,
    moebius,
    radical,
)
from .polyring import IntPoly, TruncSeries, binomial_power_inplace, exact_div, mul, substitute

__all__ = [
    "DEFAULT_CAP",
    "cyclotomic",
    "cyclotomic_recursive",
    "cyclotomic_trunc",
    "apply_cyclotomic_trunc",
    "trunc_terms",
    "factor_xn_minus_1",
    "verify_factorization",
    "verify_lemma2",
    "IdentityReport",
    "bateman_check",
    "HeightBoundResult",
]

DEFAULT_CAP = 10**6

IndexLike = Union[FactoredInt, int]


def _guard(n: FactoredInt, cap: int) -> None:
    if not n.at_most(cap):
        raise CapExceeded(f"index {n} exceeds materialization cap {cap}")


def _mobius_terms(n: FactoredInt) -> list[tuple[int, int]]:
    """Pairs (d, mu(n/d)) over the d | n with n/d squarefree."""
    out = []
    for e in divisors(radical(n)):
        out.append(((n // e).value, moebius(e)))
    return out


@lru_cache(maxsize=8192)
def _phi_product(n: FactoredInt) -> IntPoly:
    terms = _mobius_terms(n)
    acc = IntPoly.one()
    for d, mu in sorted(terms):
        if mu == 1:
            acc = mul(acc, IntPoly.x_pow_minus_1(d))
    for d, mu in sorted(terms):
        if mu == -1:
            acc = exact_div(acc, IntPoly.x_pow_minus_1(d))
    return acc


def cyclotomic(n: IndexLike, cap: int = DEFAULT_CAP) -> IntPoly:
    """phi_n from the Moebius product over the divisors of n."""
    n = as_factored(n)
    _guard(n, cap)
    return _phi_product(n)


@lru_cache(maxsize=8192)
def _phi_squarefree(primes: tuple[int, ...]) -> IntPoly:
    if not primes:
        return IntPoly((-1, 1))
    odd = tuple(p for p in primes if p != 2)
    if primes[0] == 2 and odd:
        # phi_{2m}(x) = phi_m(-x) for odd m > 1
        return substitute(_phi_squarefree(odd), "negate")
    base = _phi_squarefree(primes[:-1])
    p = primes[-1]
    # p does not divide the smaller index
    return exact_div(substitute(base, "power", p), base)


def cyclotomic_recursive(n: IndexLike, cap: int = DEFAULT_CAP) -> IntPoly:
    """phi_n built from the prime-index recurrences.

    The squarefree kernel is assembled one prime at a time, then the
    remaining prime powers are applied as x -> x^(n/rad n).
    """
    n = as_factored(n)
    _guard(n, cap)
    rad = radical(n)
    core = _phi_squarefree(rad.primes)
    k = n.value // rad.value
    return substitute(core, "power", k) if k > 1 else core


def trunc_terms(n: IndexLike, order: int) -> tuple[list[tuple[int, int]], int]:
    """Surviving factors of phi_n modulo x^(order+1).

    Returns ``(terms, dropped)``: ``terms`` lists ``(d, mu(n/d))`` for
    ``d <= order`` with ``mu(n/d) != 0``; ``dropped`` counts the remaining
    nonzero factors, each of which is -1 modulo x^(order+1).
    """
    n = as_factored(n)
    # primes above order never divide a surviving d; only their count and
    # whether one is squared matter
    small = []
    large = 0
    squared = False
    for p, e in n.factors:
        if p <= order:
            small.append((p, e))
        else:
            large += 1
            squared = squared or e > 1
    terms = _small_terms(tuple(small), large, squared, order)
    return list(terms), (1 << len(n.factors)) - len(terms)


@lru_cache(maxsize=65536)
def _small_terms(small: tuple, large: int, squared: bool, order: int) -> tuple:
    if squared:
        return ()
    # every surviving d is a multiple of prod p^(e-1)
    kernel = 1
    for p, e in small:
        if e > 1:
            kernel *= p ** (e - 1)
            if kernel > order:
                return ()
    terms = []
    for d in range(kernel, order + 1, kernel):
        rest = d
        odd = large
        for p, e in small:
            a = 0
            while rest % p == 0:
                rest //= p
                a += 1
            if e - a > 1 or a > e:
                break
            odd += e - a
        else:
            if rest == 1:
                terms.append((d, -1 if odd % 2 else 1))
    return tuple(terms)


def apply_cyclotomic_trunc(c: list[int], n: IndexLike) -> int:
    """Multiply ``c`` in place by prod (1 - x^d)^mu(n/d) over surviving d.

    Returns the number of sign flips still owed: (x^d - 1)^mu equals
    -(1 - x^d)^mu for mu = +-1, and every dropped factor is -1.
    """
    terms, dropped = trunc_terms(n, len(c) - 1)
    for d, mu in terms:
        binomial_power_inplace(c, d, mu)
    return dropped + len(terms)


def cyclotomic_trunc(n: IndexLike, order: int) -> TruncSeries:
    """phi_n modulo x^(order+1); only the factorization of n is used."""
    if order < 0:
        raise ValueError("order must be >= 0")
    c = [0] * (order + 1)
    c[0] = 1
    if apply_cyclotomic_trunc(c, n) % 2:
        c = [-a for a in c]
    return TruncSeries(order, c)


def factor_xn_minus_1(n: IndexLike, cap: int = DEFAULT_CAP) -> list[tuple[FactoredInt, IntPoly]]:
    n = as_factored(n)
    _guard(n, cap)
    return [(d, cyclotomic(d, cap)) for d in divisors(n)]


def verify_factorization(n: IndexLike, cap: int = DEFAULT_CAP) -> bool:
    """True when the product of phi_d over d | n is exactly x^n - 1."""
    n = as_factored(n)
    acc = IntPoly.one()
    for _, phi in factor_xn_minus_1(n, cap):
        acc = mul(acc, phi)
    return acc == IntPoly.x_pow_minus_1(n.value)


@dataclass(frozen=True)
class IdentityReport:
    n: int
    p: int
    power_divides: str  # phi_{np}(x) = phi_n(x^p) when p | n
    power_coprime: str  # phi_{np}(x) = phi_n(x^p) / phi_n(x) when p does not divide n
    negate_odd: str  # phi_{2n}(x) = phi_n(-x) for odd n > 1

    def all_ok(self) -> bool:
        return "fail" not in (self.power_divides, self.power_coprime, self.negate_odd)


def _status(applies: bool, holds) -> str:
    if not applies:
        return "skip"
    return "pass" if holds() else "fail"


def verify_lemma2(n: IndexLike, p: int, cap: int = DEFAULT_CAP) -> IdentityReport:
    n = as_factored(n)
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    _guard(n * p, cap)
    _guard(n * 2, cap)
    phi_n = cyclotomic(n, cap)
    lifted = substitute(phi_n, "power", p)
    divides = n.value % p == 0
    a = _status(divides, lambda: cyclotomic(n * p, cap) == lifted)
    b = _status(not divides, lambda: cyclotomic(n * p, cap) == exact_div(lifted, phi_n))
    c = _status(
        n.value > 1 and n.value % 2 == 1,
        lambda: cyclotomic(n * 2, cap) == substitute(phi_n, "negate"),
    )
    return IdentityReport(n.value, p, a, b, c)


@dataclass(frozen=True)
class HeightBoundResult:
    n: int
    height: int
    bound: int
    ok: bool
    odd_prime_count: int
    note: str = ""


def bateman_check(n: IndexLike, cap: int = DEFAULT_CAP) -> HeightBoundResult:
    """Compare the height of phi_n with n^(2^(k-1)), k = number of odd primes of n."""
    n = as_factored(n)
    a = cyclotomic(n, cap).height()
    k = sum(1 for p in n.primes if p != 2)
    if k:
        bound = n.value ** (1 << (k - 1))
        note = ""
    else:
        r = isqrt(n.value)
        bound = r if r * r == n.value else r + 1
        note = "k=0: exponent 2^(-1), bound taken as ceil(sqrt(n))"
    return HeightBoundResult(n.value, a, bound, a <= bound, k, note)
