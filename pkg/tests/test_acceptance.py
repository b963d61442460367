"""Acceptance checks, one per criterion; each prints a PASS/FAIL line.

Run standalone with ``python tests/test_acceptance.py [--seed N]`` or under
pytest, where the lines appear in the terminal summary.
"""

from __future__ import annotations

import random
import sys
import time
from fractions import Fraction
from math import factorial

from conftest import DEFAULT_SEED

from cyclodiv.bounds import lower_band, upper_grid
from cyclodiv.constructions import (
    building_block_d,
    building_block_dprime,
    extremal_coeff,
    prefix_witness,
    suzuki_table,
    suzuki_witness,
)
from cyclodiv.cyclotomic import (
    bateman_check,
    cyclotomic,
    cyclotomic_recursive,
    cyclotomic_trunc,
    verify_factorization,
)
from cyclodiv.divisor_search import big_B, big_H
from cyclodiv.numtheory import primes_upto

# limits pinned from the acceptance criteria
LIMIT_CYCLO_S = 60
LIMIT_HEIGHTS_S = 5
LIMIT_GRID_SERIAL_S = 600
LIMIT_GRID_PARALLEL_S = 180

RESULTS: list[str] = []


def _record(number: int, title: str, ok: bool, detail: str) -> None:
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title} ({detail})"
    RESULTS.append(line)
    print(line)


def criterion_1() -> tuple[bool, str]:
    t0 = time.perf_counter()
    bad_eq2 = [n for n in range(1, 1001) if not verify_factorization(n)]
    bad_paths = [n for n in range(1, 1001) if cyclotomic(n) != cyclotomic_recursive(n)]
    dt = time.perf_counter() - t0
    ok = not bad_eq2 and not bad_paths and dt < LIMIT_CYCLO_S
    return ok, f"factorization failures {len(bad_eq2)}, path mismatches {len(bad_paths)}, {dt:.1f}s < {LIMIT_CYCLO_S}s"


def criterion_2() -> tuple[bool, str]:
    mismatches = 0
    for n in range(1, 1001):
        phi = cyclotomic(n)
        for r in (1, 5, 10):
            if list(cyclotomic_trunc(n, r).coeffs) != [phi[i] for i in range(r + 1)]:
                mismatches += 1
    return mismatches == 0, f"{mismatches} mismatches over 3000 pairs"


def criterion_3() -> tuple[bool, str]:
    landmark = cyclotomic(105)[7]
    flat = [n for n in range(1, 105) if cyclotomic(n).height() != 1]
    t0 = time.perf_counter()
    bateman_bad = [n for n in range(1, 5001) if not bateman_check(n).ok]
    dt = time.perf_counter() - t0
    ok = landmark == -2 and not flat and not bateman_bad
    return ok, f"phi_105[7] = {landmark}, A(n) != 1 below 105: {flat}, height bound failures {len(bateman_bad)} ({dt:.1f}s)"


def criterion_4() -> tuple[bool, str]:
    t0 = time.perf_counter()
    primes_ok = all(big_B(p).value == 1 for p in primes_upto(50))
    b6 = big_B(6)
    h16 = big_H(1, 6)
    h130 = big_H(1, 30)
    dt = time.perf_counter() - t0
    ok = (
        primes_ok
        and (b6.value, b6.witness.to_json()) == (2, [1, 6])
        and h16.value == 2
        and h130.value == 4
        and dt < LIMIT_HEIGHTS_S
    )
    return ok, (
        f"B(p)=1 for p<=50: {primes_ok}, B(6)={b6.value} witness {b6.witness.to_json()}, "
        f"H(1,6)={h16.value}, H(1,30)={h130.value}, {dt:.2f}s < {LIMIT_HEIGHTS_S}s"
    )


def criterion_5() -> tuple[bool, str]:
    t0 = time.perf_counter()
    serial = upper_grid(8, 200)
    t_serial = time.perf_counter() - t0
    t0 = time.perf_counter()
    parallel = upper_grid(8, 200, workers=4)
    t_parallel = time.perf_counter() - t0
    violations = [(rep.r, rep.n.value, rep.observed, str(rep.exact_bound)) for rep in serial if not rep.ok]
    same = [rep.to_json() for rep in serial] == [rep.to_json() for rep in parallel]
    tight = all(
        rep.observed == rep.exact_bound
        for rep in serial
        if (rep.r, rep.n.value) in ((1, 6), (1, 30))
    )
    ok = not violations and tight and same and t_serial < LIMIT_GRID_SERIAL_S and t_parallel < LIMIT_GRID_PARALLEL_S
    shown = ", ".join(f"H({r},{n})={h} > {b}" for r, n, h, b in violations[:5])
    return ok, (
        f"{len(violations)} violations{': ' + shown if shown else ''}; tight at (1,6),(1,30): {tight}; "
        f"serial {t_serial:.1f}s, 4 workers {t_parallel:.1f}s, identical: {same}"
    )


def _ratio(k: int, r: int) -> Fraction:
    d = 1 << k
    return Fraction(abs(extremal_coeff(k, r)) * 2**r * factorial(r), d**r)


def criterion_6() -> tuple[bool, str]:
    exact = [k for k in range(2, 13) if _ratio(k, 1) != 1]
    outside = []
    for r in (2, 3, 4):
        for k in range(r, 11):
            if abs(_ratio(k, r) - 1) > lower_band(r, 1 << k):
                outside.append((r, k))
    ok = not exact and not outside
    return ok, f"r=1 ratios != 1 at k={exact}; outside band: {outside}"


def criterion_7(seed: int) -> tuple[bool, str]:
    rng = random.Random(seed)
    bad = []
    materialized = 0
    t0 = time.perf_counter()
    for _ in range(200):
        r = rng.randint(1, 6)
        target = [rng.randint(-8, 8) for _ in range(r)]
        w = prefix_witness(target)
        names = [n for n, _ in w.claims]
        if "materialized product divides x^l - 1" in names:
            materialized += 1
        if not w.ok or list(w.truncation.coeffs[1:]) != target:
            bad.append(target)
    dt = time.perf_counter() - t0
    return not bad, f"seed {seed}, {len(bad)} failing targets, {materialized} materialized, {dt:.1f}s"


def criterion_8() -> tuple[bool, str]:
    bad = []
    for m in range(1, 9):
        for n in range(1, 5):
            w = suzuki_witness(m, n)
            covered = set(w.truncation.coeffs) >= set(range(-n, n + 1))
            if len(w.product) != m or not covered or not w.ok:
                bad.append((m, n))
    base = suzuki_witness(1, 1)
    table = [(-1) ** i * c for i, c in enumerate(suzuki_table([5, 7, 11]))]
    reproduced = [m.value for m in base.product.indices] == [770] and list(base.truncation.coeffs) == table
    return not bad and reproduced, f"failing (m,n): {bad}; (5,7,11) table reproduced: {reproduced}"


def criterion_9() -> tuple[bool, str]:
    failures = []
    for n in range(1, 13):
        minus = [1] + [0] * (n - 1) + [-1]
        plus = [1] + [0] * (n - 1) + [1]
        ds = {m: building_block_d(n, m) for m in range(1, 6)}
        dps = {m: building_block_dprime(n, m) for m in range(1, 6)}
        for m in range(1, 6):
            if list(ds[m].trunc(n).coeffs) != minus:
                failures.append(("(4)", n, m))
            if list(dps[m].trunc(n).coeffs) != plus:
                failures.append(("(5)", n, m))
            for m2 in range(1, 6):
                a, b = ds[m].index_values(), dps[m2].index_values()
                if m != m2 and a & ds[m2].index_values():
                    failures.append(("(1)", n, m, m2))
                if m != m2 and dps[m].index_values() & b:
                    failures.append(("(2)", n, m, m2))
                if a & b:
                    failures.append(("(3)", n, m, m2))
    return not failures, f"{len(failures)} property failures over n<=12, m1,m2<=5"


TITLES = {
    1: "cyclotomic correctness",
    2: "truncation oracle",
    3: "coefficient landmark and height bound",
    4: "exhaustive height values",
    5: "upper bound dominance",
    6: "extremal ratio",
    7: "prefix witnesses",
    8: "coverage witnesses",
    9: "building blocks",
}


def _check(number: int, *args) -> None:
    ok, detail = globals()[f"criterion_{number}"](*args)
    _record(number, TITLES[number], ok, detail)
    assert ok, detail


def test_criterion_1_cyclotomic_correctness():
    _check(1)


def test_criterion_2_truncation_oracle():
    _check(2)


def test_criterion_3_landmark_and_height_bound():
    _check(3)


def test_criterion_4_exhaustive_heights():
    _check(4)


def test_criterion_5_upper_bound_dominance():
    _check(5)


def test_criterion_6_extremal_ratio():
    _check(6)


def test_criterion_7_prefix_witnesses(seed):
    _check(7, seed)


def test_criterion_8_coverage_witnesses():
    _check(8)


def test_criterion_9_building_blocks():
    _check(9)


if __name__ == "__main__":
    import argparse

    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seed", type=int, default=DEFAULT_SEED)
    args = parser.parse_args()
    failed = 0
    for number in TITLES:
        extra = (args.seed,) if number == 7 else ()
        ok, detail = globals()[f"criterion_{number}"](*extra)
        _record(number, TITLES[number], ok, detail)
        failed += not ok
    sys.exit(1 if failed else 0)
