from concurrent.futures import ProcessPoolExecutor
from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cyclodiv.cyclotomic import cyclotomic
from cyclodiv.divisor_search import (
    DivisorSubset,
    SearchResult,
    _lex_less,
    big_B,
    big_H,
    divisor_poly,
    divisor_poly_trunc,
    exponent_vector,
    height_profile,
)
from cyclodiv.errors import BudgetExceeded, CapExceeded
from cyclodiv.numtheory import FactoredInt, divisor_count, divisors, moebius, primes_upto
from cyclodiv.polyring import IntPoly, exact_div, mul


def _subsets(n):
    return [DivisorSubset(FactoredInt.of(n), mask) for mask in range(1 << divisor_count(n))]


def test_exponent_vector_examples():
    full = exponent_vector(DivisorSubset.full(12))
    assert full.nonzero() == {12: 1}
    assert exponent_vector(DivisorSubset.from_members(12, [1])).nonzero() == {1: 1}
    ev = exponent_vector(DivisorSubset.from_members(6, [1, 6]))
    assert [ev[d] for d in (1, 2, 3, 6)] == [2, -1, -1, 1]


@given(st.integers(1, 200), st.data())
def test_exponent_vector_reconstructs_divisor(n, data):
    mask = data.draw(st.integers(0, (1 << divisor_count(n)) - 1))
    s = DivisorSubset(FactoredInt.of(n), mask)
    num, den = IntPoly.one(), IntPoly.one()
    for d, e in exponent_vector(s).nonzero().items():
        f = IntPoly.x_pow_minus_1(d)
        for _ in range(abs(e)):
            if e > 0:
                num = mul(num, f)
            else:
                den = mul(den, f)
    assert exact_div(num, den) == divisor_poly(s)


@pytest.mark.parametrize("n", range(2, 201))
def test_exponent_bound(n):
    half = divisor_count(n) / 2
    for s in _subsets(n) if divisor_count(n) <= 12 else []:
        assert all(abs(e) <= half for e in exponent_vector(s).entries.values())


@given(st.integers(2, 200), st.data())
def test_exponent_bound_sampled(n, data):
    mask = data.draw(st.integers(0, (1 << divisor_count(n)) - 1))
    ev = exponent_vector(DivisorSubset(FactoredInt.of(n), mask))
    assert all(2 * abs(e) <= divisor_count(n) for e in ev.entries.values())


def test_exponent_bound_fails_at_one():
    # d(1) = 1 but phi_1 = x - 1 has e(1) = 1
    assert exponent_vector(DivisorSubset.full(1))[1] == 1


def test_divisor_poly_examples():
    assert divisor_poly(DivisorSubset(FactoredInt.of(6), 0)) == IntPoly.one()
    assert divisor_poly(DivisorSubset.full(6)) == IntPoly.x_pow_minus_1(6)
    assert divisor_poly(DivisorSubset.from_members(6, [1, 6])) == IntPoly((-1, 2, -2, 1))
    with pytest.raises(ValueError):
        DivisorSubset.from_members(6, [4])


@pytest.mark.parametrize("n", range(1, 61))
def test_all_divisors_divide_and_truncate(n):
    xn = IntPoly.x_pow_minus_1(n)
    for s in _subsets(n):
        f = divisor_poly(s)
        exact_div(xn, f)
        for r in (0, 3, 10):
            assert list(divisor_poly_trunc(s, r).coeffs) == [f[i] for i in range(r + 1)]


def test_divisor_poly_trunc_examples():
    s = DivisorSubset.from_members(6, [1, 6])
    assert divisor_poly_trunc(s, 2).coeffs == (-1, 2, -2)
    assert divisor_poly_trunc(DivisorSubset.full(30), 10).coeffs == (-1,) + (0,) * 10
    for s in _subsets(12):
        assert divisor_poly_trunc(s, 0).coeffs[0] in (1, -1)


def test_divisor_poly_trunc_huge():
    n = FactoredInt.from_primes(primes_upto(40))
    s = DivisorSubset.from_members(n, [1, 6, 10, 15])
    assert divisor_poly_trunc(s, 1).coeffs == (-1, 4)
    with pytest.raises(CapExceeded):
        divisor_poly(s, cap=1000)


def _brute_B(n):
    best, wit = 0, None
    for s in _subsets(n):
        h = divisor_poly(s).height()
        if best < h or (h == best and wit is not None and s.to_json() < wit):
            best, wit = h, s.to_json()
        if wit is None:
            wit = s.to_json()
    return best, wit


def _brute_H(r, n):
    best, wit = -1, None
    for s in _subsets(n):
        v = abs(divisor_poly(s)[r])
        if v > best or (v == best and s.to_json() < wit):
            best, wit = v, s.to_json()
    return best, wit


def test_B_examples():
    assert big_B(7).value == 1
    assert big_B(1).value == 1
    res = big_B(6)
    assert (res.value, res.witness.to_json()) == (2, [1, 6])


@pytest.mark.parametrize("n", [1, 2, 4, 6, 8, 9, 12, 15, 16, 18, 20, 24, 30, 36])
def test_B_matches_brute_force(n):
    res = big_B(n)
    assert (res.value, res.witness.to_json()) == _brute_B(n)


def test_H_examples():
    assert big_H(1, 6).value == 2 and big_H(1, 6).witness.to_json() == [1, 6]
    assert big_H(1, 30).value == 4
    assert big_H(1, 1).value == 1
    assert big_H(7, 5).value == 0


@pytest.mark.parametrize("n", [1, 2, 6, 12, 18, 24, 30, 36, 48, 60])
def test_H_matches_brute_force(n):
    for r in range(0, 9):
        res = big_H(r, n)
        assert (res.value, res.witness.to_json()) == _brute_H(r, n), r


@pytest.mark.parametrize("n", range(1, 121))
def test_H1_mobius_oracle(n):
    ms = [moebius(m) for m in divisors(n)]
    best = max(abs(sum(c)) for k in range(len(ms) + 1) for c in combinations(ms, k))
    assert big_H(1, n).value == best


@pytest.mark.parametrize("n", [6, 12, 30, 36])
def test_H_below_B(n):
    b = big_B(n).value
    for res in height_profile(n, n + 3):
        assert res.value <= b
        if res.r > n:
            assert res.value == 0


def test_budget():
    with pytest.raises(BudgetExceeded):
        big_H(1, 720720)
    with pytest.raises(BudgetExceeded):
        big_B(30, budget=100)


def test_parallel_matches_serial():
    n = 2**4 * 3 * 5  # 20 divisors, enough to split across workers
    serial = height_profile(n, 6)
    with ProcessPoolExecutor(max_workers=2) as ex:
        parallel = height_profile(n, 6, executor=ex)
    assert [r.to_json() for r in serial] == [r.to_json() for r in parallel]
    many = height_profile(n, 6, workers=4)
    assert [r.to_json() for r in serial] == [r.to_json() for r in many]


def test_lex_order():
    masks = range(64)
    members = lambda m: [i for i in range(6) if m >> i & 1]
    for a in masks:
        for b in masks:
            assert _lex_less(a, b) == (members(a) < members(b))


def test_search_result_json_round_trip():
    res = big_H(2, 30)
    assert SearchResult.from_json(res.to_json()) == res
