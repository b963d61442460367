"""Upper and lower bounds for H(r, n) and the exploratory growth statistics.

The upper bound is exact: |e(d)| <= d(n)/2 makes every truncated divisor
coefficient-wise dominated by prod_{i<=r} (1 - x^i)^(-d(n)/2), whose r-th
coefficient is a polynomial in d(n) with leading term d(n)^r / (2^r r!).
"""

from __future__ import annotations

from concurrent.futures import Executor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Iterator, Optional, Union

import mpmath

from .constructions import extremal_coeff
from .cyclotomic import DEFAULT_CAP
from .divisor_search import DEFAULT_B_BUDGET, DEFAULT_H_BUDGET, big_B, height_profile
from .errors import BudgetExceeded, CapExceeded
from .numtheory import FactoredInt, as_factored, divisor_count, primorial
from .polyring import TruncSeries, binomial_series, trunc_mul

__all__ = [
    "BoundReport",
    "dominance_bound",
    "leading_term",
    "multinomial_sum",
    "leading_coefficient",
    "lower_band",
    "check_upper",
    "upper_grid",
    "check_lower",
    "lower_grid",
    "ramanujan_stat",
    "growth_stat",
    "SurveyRow",
    "survey",
    "UPPER_COLUMNS",
    "LOWER_COLUMNS",
]

UPPER_COLUMNS = ["r", "n", "d_n", "H_rn", "dominance_bound", "leading_term", "ratio"]
LOWER_COLUMNS = ["r", "k", "n", "d_n", "observed", "H_rn", "leading_term", "ratio", "band"]

IndexLike = Union[FactoredInt, int]


@lru_cache(maxsize=4096)
def _dominating_series(r: int, d_n: int) -> TruncSeries:
    alpha = Fraction(d_n, 2)
    acc = TruncSeries.one(r)
    for i in range(1, r + 1):
        acc = trunc_mul(acc, binomial_series(alpha, i, r))
    return acc


def dominance_bound(r: int, d_n: int) -> Fraction:
    """Coefficient of x^r in prod_{i=1}^r (1 - x^i)^(-d_n/2), exactly."""
    if r < 0 or d_n < 1:
        raise ValueError("need r >= 0 and d_n >= 1")
    return Fraction(_dominating_series(r, d_n)[r])


def leading_term(r: int, d_n: int) -> Fraction:
    if r < 0:
        raise ValueError("r must be >= 0")
    return Fraction(d_n**r, 2**r * factorial(r))


def _partitions(r: int, largest: int) -> Iterator[dict[int, int]]:
    """Multiplicity maps {j: i_j} with sum j * i_j = r, parts at most ``largest``."""
    if r == 0:
        yield {}
        return
    for j in range(min(r, largest), 0, -1):
        for rest in _partitions(r - j, j):
            out = dict(rest)
            out[j] = out.get(j, 0) + 1
            yield out


def multinomial_sum(r: int, d_n: int, dominant_only: bool = False) -> Fraction:
    """x^r coefficient of (sum c_j x^j)^d_n by the multinomial theorem.

    c_j are the coefficients of prod (1 - x^i)^(-1/2). With
    ``dominant_only`` just the all-ones partition i_1 = r is kept.
    """
    c = _dominating_series(r, 1)
    total = Fraction(0)
    for part in _partitions(r, r):
        if dominant_only and part != ({1: r} if r else {}):
            continue
        used = sum(part.values())
        if used > d_n:
            continue
        term = Fraction(factorial(d_n), factorial(d_n - used))
        for j, i in part.items():
            term *= Fraction(c[j]) ** i / factorial(i)
        total += term
    return total


def leading_coefficient(values: list[Fraction]) -> Fraction:
    """Leading coefficient of a degree-k polynomial from its values at k+1 consecutive points."""
    k = len(values) - 1
    diffs = list(values)
    for _ in range(k):
        diffs = [b - a for a, b in zip(diffs, diffs[1:])]
    return Fraction(diffs[0]) / factorial(k)


def lower_band(r: int, d_n: int) -> Fraction:
    """Half-width of the accepted ratio band around 1."""
    return Fraction(8 * r * r, d_n)


@dataclass
class BoundReport:
    r: int
    n: FactoredInt
    d_n: int
    exact_bound: Fraction
    leading_term: Fraction
    observed: Optional[int] = None
    height: Optional[int] = None  # H(r, n) when the search fits the budget
    k: Optional[int] = None
    ratios: dict[str, Fraction] = field(default_factory=dict)
    checks: list[tuple[str, bool]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(passed for _, passed in self.checks)

    def upper_row(self) -> dict:
        return {
            "r": self.r,
            "n": str(self.n),
            "d_n": self.d_n,
            "H_rn": self.observed,
            "dominance_bound": str(self.exact_bound),
            "leading_term": str(self.leading_term),
            "ratio": _fmt(self.ratios.get("observed/leading")),
        }

    def lower_row(self) -> dict:
        return {
            "r": self.r,
            "k": self.k,
            "n": str(self.n),
            "d_n": self.d_n,
            "observed": self.observed,
            "H_rn": self.height,
            "leading_term": str(self.leading_term),
            "ratio": _fmt(self.ratios.get("observed/leading")),
            "band": str(lower_band(self.r, self.d_n)),
        }

    def to_json(self) -> dict:
        return {
            "r": self.r,
            "n": self.n.to_json(),
            "k": self.k,
            "d_n": self.d_n,
            "exact_bound": str(self.exact_bound),
            "leading_term": str(self.leading_term),
            "observed": self.observed,
            "height": self.height,
            "ratios": {k: str(v) for k, v in self.ratios.items()},
            "checks": [{"name": n, "pass": p} for n, p in self.checks],
        }

    @classmethod
    def from_json(cls, data: dict) -> "BoundReport":
        return cls(
            r=data["r"],
            n=FactoredInt.from_json(data["n"]),
            d_n=data["d_n"],
            exact_bound=Fraction(data["exact_bound"]),
            leading_term=Fraction(data["leading_term"]),
            observed=data["observed"],
            height=data["height"],
            k=data["k"],
            ratios={k: Fraction(v) for k, v in data["ratios"].items()},
            checks=[(c["name"], c["pass"]) for c in data["checks"]],
        )


def _fmt(x: Optional[Fraction]) -> str:
    return "" if x is None else f"{float(x):.6f}"


def _upper_report(r: int, n: FactoredInt, d_n: int, observed: int) -> BoundReport:
    bound = dominance_bound(r, d_n)
    lead = leading_term(r, d_n)
    return BoundReport(
        r,
        n,
        d_n,
        bound,
        lead,
        observed=observed,
        height=observed,
        ratios={"observed/leading": Fraction(observed) / lead, "bound/leading": bound / lead},
        checks=[("H(r,n) <= dominance bound", observed <= bound)],
    )


def check_upper(
    r: int,
    n: IndexLike,
    budget: int = DEFAULT_H_BUDGET,
    workers: int = 1,
    executor: Optional[Executor] = None,
) -> BoundReport:
    n = as_factored(n)
    observed = height_profile(n, r, budget, workers, executor)[r].value
    return _upper_report(r, n, divisor_count(n), observed)


def upper_grid(
    r_max: int,
    n_max: int,
    budget: int = DEFAULT_H_BUDGET,
    workers: int = 1,
    executor: Optional[Executor] = None,
    r_min: int = 1,
) -> list[BoundReport]:
    """check_upper for every r_min <= r <= r_max and 1 <= n <= n_max, ordered by (r, n).

    One search per n yields all r at once.
    """
    per_n = {}
    for n in range(1, n_max + 1):
        per_n[n] = height_profile(n, r_max, budget, workers, executor)
    out = []
    for r in range(r_min, r_max + 1):
        for n in range(1, n_max + 1):
            f = as_factored(n)
            out.append(_upper_report(r, f, divisor_count(f), per_n[n][r].value))
    return out


def check_lower(r: int, k: int, budget: int = DEFAULT_H_BUDGET) -> BoundReport:
    """Compare the extremal divisor over the k-th primorial with the leading term."""
    if r < 1 or k < r:
        raise ValueError("need 1 <= r <= k")
    n = primorial(k)
    d_n = 1 << k
    observed = abs(extremal_coeff(k, r))
    lead = leading_term(r, d_n)
    ratio = Fraction(observed) / lead
    band = lower_band(r, d_n)
    report = BoundReport(
        r,
        n,
        d_n,
        dominance_bound(r, d_n),
        lead,
        observed=observed,
        k=k,
        ratios={"observed/leading": ratio},
        checks=[("ratio within band", abs(ratio - 1) <= band)],
    )
    try:
        report.height = height_profile(n, r, budget)[r].value
    except BudgetExceeded:
        pass
    if report.height is not None:
        report.checks.append(("observed <= H(r,n)", observed <= report.height))
    return report


def lower_grid(r_max: int, k_max: int, budget: int = DEFAULT_H_BUDGET) -> list[BoundReport]:
    return [check_lower(r, k, budget) for r in range(1, r_max + 1) for k in range(r, k_max + 1)]


def _log(n: FactoredInt) -> mpmath.mpf:
    return mpmath.fsum(e * mpmath.log(p) for p, e in n.factors)


def ramanujan_stat(n: IndexLike, dps: int = 50) -> mpmath.mpf:
    """log d(n) * log log n / log n, evaluated to ``dps`` digits."""
    n = as_factored(n)
    if not n.factors or n.at_most(2):
        raise ValueError("ramanujan_stat needs n >= 3")
    with mpmath.workdps(dps):
        ln = _log(n)
        return +(mpmath.log(divisor_count(n)) * mpmath.log(ln) / ln)


def growth_stat(b: int, n: IndexLike, dps: int = 50) -> Optional[mpmath.mpf]:
    """log log B / (log n / log log n); None when B <= 1 leaves it undefined."""
    n = as_factored(n)
    if b <= 1 or n.at_most(2):
        return None
    with mpmath.workdps(dps):
        ln = _log(n)
        return +(mpmath.log(mpmath.log(b)) * mpmath.log(ln) / ln)


@dataclass(frozen=True)
class SurveyRow:
    n: int
    d_n: int
    exponent: mpmath.mpf
    b_n: Optional[int]
    growth: Optional[mpmath.mpf]

    def to_row(self, digits: int = 12) -> dict:
        return {
            "n": self.n,
            "d_n": self.d_n,
            "divisor_exponent": mpmath.nstr(self.exponent, digits),
            "B_n": self.b_n,
            "growth_stat": "" if self.growth is None else mpmath.nstr(self.growth, digits),
        }


def survey(
    n_max: int,
    budget: int = DEFAULT_B_BUDGET,
    cap: int = DEFAULT_CAP,
    n_min: int = 3,
) -> list[SurveyRow]:
    """Exploratory table; B(n) is left empty when the search does not fit."""
    rows = []
    for n in range(max(n_min, 3), n_max + 1):
        try:
            b = big_B(n, budget, cap).value
        except (BudgetExceeded, CapExceeded):
            b = None
        rows.append(
            SurveyRow(n, divisor_count(n), ramanujan_stat(n), b, None if b is None else growth_stat(b, n))
        )
    return rows
