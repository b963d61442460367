"""Exact polynomials over the integers and truncated rational power series.

:class:`IntPoly` is a dense, immutable integer polynomial. Large products go
through Kronecker substitution so that CPython's big-integer multiply does
the heavy lifting; division by a polynomial with unit constant term uses a
Newton series inverse and is then checked by multiplying back.

:class:`TruncSeries` holds the first ``order + 1`` coefficients of a power
series with exact rational (``int`` or ``Fraction``) entries.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import accumulate
from numbers import Rational
from operator import sub
from typing import Iterable, Sequence, Union

from .errors import NotDivisible, NotInvertible, OrderMismatch

__all__ = [
    "IntPoly",
    "TruncSeries",
    "mul",
    "exact_div",
    "substitute",
    "height",
    "coefficient",
    "trunc_mul",
    "trunc_inverse",
    "binomial_series",
    "binomial_power_inplace",
]

# below this length schoolbook beats packing into big integers
_KRONECKER_MIN = 48


class IntPoly:
    """Dense integer polynomial; ``coeffs[i]`` is the coefficient of x^i."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        c = [int(a) for a in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs: tuple[int, ...] = tuple(c)

    @classmethod
    def _raw(cls, coeffs: list[int]) -> "IntPoly":
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        obj = cls.__new__(cls)
        obj.coeffs = tuple(coeffs)
        return obj

    @classmethod
    def one(cls) -> "IntPoly":
        return cls((1,))

    @classmethod
    def x_pow_minus_1(cls, n: int) -> "IntPoly":
        """The binomial x^n - 1."""
        return cls._raw([-1] + [0] * (n - 1) + [1])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __eq__(self, other: object) -> bool:
        if isinstance(other, IntPoly):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"IntPoly({list(self.coeffs)})"

    def __str__(self) -> str:
        return str(list(self.coeffs)) if self.coeffs else "[0]"

    def __add__(self, other: "IntPoly") -> "IntPoly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return IntPoly._raw([x + (b[i] if i < len(b) else 0) for i, x in enumerate(a)])

    def __neg__(self) -> "IntPoly":
        return IntPoly._raw([-a for a in self.coeffs])

    def __sub__(self, other: "IntPoly") -> "IntPoly":
        return self + (-other)

    def __mul__(self, other: "IntPoly") -> "IntPoly":
        return mul(self, other)

    def __call__(self, x: int) -> int:
        acc = 0
        for a in reversed(self.coeffs):
            acc = acc * x + a
        return acc

    def height(self) -> int:
        return max((abs(a) for a in self.coeffs), default=0)

    def truncate(self, order: int) -> "TruncSeries":
        c = list(self.coeffs[: order + 1])
        return TruncSeries(order, c + [0] * (order + 1 - len(c)))


# -- integer polynomial kernels ---------------------------------------------


def _binomial_degree(c: Sequence[int]) -> int:
    """d if ``c`` is x^d - 1, else 0."""
    if len(c) >= 2 and c[0] == -1 and c[-1] == 1 and not any(c[1:-1]):
        return len(c) - 1
    return 0


def _schoolbook(a: Sequence[int], b: Sequence[int]) -> list[int]:
    if len(a) < len(b):
        a, b = b, a
    out = [0] * (len(a) + len(b) - 1)
    for j, bj in enumerate(b):
        if bj:
            for i, ai in enumerate(a):
                out[i + j] += ai * bj
    return out


def _pack(c: Sequence[int], nbytes: int) -> int:
    pos = b"".join((a if a > 0 else 0).to_bytes(nbytes, "little") for a in c)
    neg = b"".join((-a if a < 0 else 0).to_bytes(nbytes, "little") for a in c)
    return int.from_bytes(pos, "little") - int.from_bytes(neg, "little")


def _unpack(v: int, nbytes: int, length: int) -> list[int]:
    sign = 1
    if v < 0:
        v, sign = -v, -1
    raw = v.to_bytes(nbytes * length + 1, "little")
    base = 1 << (8 * nbytes)
    half = base >> 1
    out = []
    carry = 0
    for i in range(length):
        digit = int.from_bytes(raw[i * nbytes : (i + 1) * nbytes], "little") + carry
        if digit >= half:
            digit -= base
            carry = 1
        else:
            carry = 0
        out.append(sign * digit)
    return out


def _kronecker(a: Sequence[int], b: Sequence[int]) -> list[int]:
    bound = max(map(abs, a)) * max(map(abs, b)) * min(len(a), len(b))
    nbytes = (bound.bit_length() + 2 + 7) // 8
    length = len(a) + len(b) - 1
    return _unpack(_pack(a, nbytes) * _pack(b, nbytes), nbytes, length)


def _mul_lists(a: Sequence[int], b: Sequence[int]) -> list[int]:
    if not a or not b:
        return []
    if len(a) < len(b):
        a, b = b, a
    d = _binomial_degree(b)
    if d:
        # (x^d - 1) * a
        return list(map(sub, [0] * d + list(a), list(a) + [0] * d))
    if len(b) < _KRONECKER_MIN or sum(1 for x in b if x) < 8:
        return _schoolbook(a, b)
    return _kronecker(a, b)


def _series_inverse(g: Sequence[int], n: int) -> list[int]:
    """First ``n`` coefficients of 1/g for integer g with g[0] = +-1."""
    u = g[0]
    h = [u]
    k = 1
    while k < n:
        k = min(2 * k, n)
        gh = _mul_lists(list(g[:k]), h)[:k]
        # h <- h * (2 - g h)
        corr = [-c for c in gh] + [0] * (k - len(gh))
        corr[0] += 2
        h = _mul_lists(h, corr)[:k]
    return h[:n]


def _div_binomial(c: Sequence[int], d: int) -> list[int]:
    """Quotient of c by x^d - 1; raises NotDivisible on a remainder."""
    top = len(c) - 1
    if top < d:
        raise NotDivisible(f"degree {top} polynomial by x^{d} - 1")
    qlen = top - d + 1
    neg = [-a for a in c[:qlen]]
    q = [0] * qlen
    for j in range(min(d, qlen)):
        q[j::d] = accumulate(neg[j::d])
    # coefficients qlen..top of q*(x^d - 1) are q[i - d]
    for i in range(qlen, top + 1):
        if c[i] != (q[i - d] if i - d >= 0 else 0):
            raise NotDivisible(f"nonzero remainder dividing by x^{d} - 1")
    return q


def _long_div(c: Sequence[int], g: Sequence[int]) -> list[int]:
    """Exact division from the top, skipping zero divisor terms."""
    rem = list(c)
    dg = len(g) - 1
    lead = g[-1]
    terms = [(i, gi) for i, gi in enumerate(g[:-1]) if gi]
    q = [0] * (len(c) - dg)
    for k in range(len(q) - 1, -1, -1):
        top = rem[k + dg]
        if top:
            qk, r = divmod(top, lead)
            if r:
                raise NotDivisible("leading coefficient does not divide")
            q[k] = qk
            for i, gi in terms:
                rem[k + i] -= qk * gi
    if any(rem[:dg]):
        raise NotDivisible("nonzero remainder")
    return q


def mul(f: IntPoly, g: IntPoly) -> IntPoly:
    return IntPoly._raw(_mul_lists(f.coeffs, g.coeffs))


def exact_div(f: IntPoly, g: IntPoly) -> IntPoly:
    """Quotient ``q`` with ``f == q * g``; :class:`NotDivisible` otherwise."""
    if g.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if f.is_zero():
        return f
    c, gc = f.coeffs, g.coeffs
    if len(c) < len(gc):
        raise NotDivisible("divisor has larger degree")
    d = _binomial_degree(gc)
    if d:
        return IntPoly._raw(_div_binomial(c, d))
    qlen = len(c) - len(gc) + 1
    dense = sum(1 for a in gc if a) >= 8 and min(qlen, len(gc)) >= _KRONECKER_MIN
    if dense and gc[0] in (1, -1):
        # q = f / g as a power series, then confirm exactly
        q = _mul_lists(list(c[:qlen]), _series_inverse(gc, qlen))[:qlen]
        q = IntPoly._raw(q)
        if mul(q, g) != f:
            raise NotDivisible("nonzero remainder")
        return q
    return IntPoly._raw(_long_div(c, gc))


def substitute(f: IntPoly, mode: str = "negate", p: int = 1) -> IntPoly:
    """``f(-x)`` for ``mode="negate"``; ``f(x**p)`` for ``mode="power"``."""
    if mode == "negate":
        return IntPoly._raw([-a if i % 2 else a for i, a in enumerate(f.coeffs)])
    if mode == "power":
        if p < 1:
            raise ValueError("power substitution needs p >= 1")
        if not f.coeffs:
            return f
        out = [0] * ((len(f.coeffs) - 1) * p + 1)
        out[::p] = f.coeffs
        return IntPoly._raw(out)
    raise ValueError(f"unknown substitution mode {mode!r}")


def height(f: IntPoly) -> int:
    return f.height()


def coefficient(f: IntPoly, r: int) -> int:
    return f[r]


# -- truncated series --------------------------------------------------------

Number = Union[int, Fraction]


def _norm(a: Rational) -> Number:
    if isinstance(a, int):
        return a
    a = Fraction(a)
    return a.numerator if a.denominator == 1 else a


class TruncSeries:
    """Power series known modulo x^(order+1), with exact rational entries.

    Integral entries are stored as ``int`` so integer-only work never pays
    for ``Fraction``.
    """

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs: Iterable[Rational] = ()):
        if order < 0:
            raise ValueError("order must be >= 0")
        c = [_norm(a) for a in coeffs][: order + 1]
        c += [0] * (order + 1 - len(c))
        self.order = order
        self.coeffs: tuple[Number, ...] = tuple(c)

    @classmethod
    def one(cls, order: int) -> "TruncSeries":
        return cls(order, [1])

    @classmethod
    def monomial_binomial(cls, order: int, d: int, sign: int = -1) -> "TruncSeries":
        """1 + sign * x^d truncated."""
        c = [0] * (order + 1)
        c[0] = 1
        if d <= order:
            c[d] += sign
        return cls(order, c)

    def __getitem__(self, i: int) -> Number:
        return self.coeffs[i] if 0 <= i <= self.order else 0

    def __eq__(self, other: object) -> bool:
        if isinstance(other, TruncSeries):
            return self.order == other.order and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.order, self.coeffs))

    def __repr__(self) -> str:
        return f"TruncSeries({self.order}, {[str(a) for a in self.coeffs]})"

    def _check(self, other: "TruncSeries") -> None:
        if self.order != other.order:
            raise OrderMismatch(f"orders {self.order} and {other.order}")

    def __add__(self, other: "TruncSeries") -> "TruncSeries":
        self._check(other)
        return TruncSeries(self.order, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self) -> "TruncSeries":
        return TruncSeries(self.order, [-a for a in self.coeffs])

    def __sub__(self, other: "TruncSeries") -> "TruncSeries":
        return self + (-other)

    def __mul__(self, other: Union["TruncSeries", Rational]) -> "TruncSeries":
        if isinstance(other, TruncSeries):
            return trunc_mul(self, other)
        return TruncSeries(self.order, [a * other for a in self.coeffs])

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "TruncSeries":
        if e < 0:
            return trunc_inverse(self) ** (-e)
        result = TruncSeries.one(self.order)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def is_integral(self) -> bool:
        return all(isinstance(a, int) for a in self.coeffs)

    def to_ints(self) -> list[int]:
        if not self.is_integral():
            raise ValueError("series has non-integral coefficients")
        return list(self.coeffs)

    def to_poly(self) -> IntPoly:
        return IntPoly(self.to_ints())


def trunc_mul(a: TruncSeries, b: TruncSeries) -> TruncSeries:
    a._check(b)
    n = a.order + 1
    out: list = [0] * n
    bc = b.coeffs
    for i, ai in enumerate(a.coeffs):
        if ai:
            for j in range(n - i):
                if bc[j]:
                    out[i + j] += ai * bc[j]
    return TruncSeries(a.order, out)


def trunc_inverse(a: TruncSeries) -> TruncSeries:
    """``b`` with ``a * b == 1`` modulo x^(order+1)."""
    a0 = a.coeffs[0]
    if a0 == 0:
        raise NotInvertible("constant term is zero")
    inv0 = Fraction(1, 1) / a0
    out: list = [inv0]
    for k in range(1, a.order + 1):
        acc = sum(a.coeffs[j] * out[k - j] for j in range(1, k + 1) if a.coeffs[j])
        out.append(-acc * inv0)
    return TruncSeries(a.order, out)


def binomial_series(alpha: Rational, d: int, order: int) -> TruncSeries:
    """(1 - x^d)^(-alpha) truncated: sum of binom(alpha+k-1, k) x^(dk)."""
    if d < 1:
        raise ValueError("power step d must be >= 1")
    alpha = Fraction(alpha)
    out: list = [0] * (order + 1)
    term = Fraction(1)
    for k in range(order // d + 1):
        if k:
            term = term * (alpha + k - 1) / k
        out[d * k] = term
    return TruncSeries(order, out)


def binomial_power_inplace(c: list, d: int, e: int) -> None:
    """Multiply the truncated coefficient list ``c`` by (1 - x^d)^e in place.

    Negative ``e`` divides, which for a unit constant term is a strided
    prefix sum. The truncation order is ``len(c) - 1``.
    """
    n = len(c)
    if d >= n or e == 0:
        return
    if e > 0:
        for _ in range(e):
            for i in range(n - 1, d - 1, -1):
                c[i] -= c[i - d]
    else:
        for _ in range(-e):
            for i in range(d, n):
                c[i] += c[i - d]
