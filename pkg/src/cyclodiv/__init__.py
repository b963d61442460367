"""Divisors of x^n - 1: cyclotomic arithmetic, exhaustive height search,
coefficient bounds and constructive witnesses."""

from .bounds import check_lower, check_upper, dominance_bound, leading_term, ramanujan_stat
from .constructions import (
    CycProduct,
    WitnessReport,
    building_block_d,
    building_block_dprime,
    extremal_coeff,
    extremal_fk,
    prefix_witness,
    suzuki_witness,
    trunc_of_product,
)
from .cyclotomic import bateman_check, cyclotomic, cyclotomic_trunc, factor_xn_minus_1, verify_lemma2
from .divisor_search import (
    DivisorSubset,
    ExponentVector,
    SearchResult,
    big_B,
    big_H,
    divisor_poly,
    divisor_poly_trunc,
    exponent_vector,
)
from .errors import (
    BudgetExceeded,
    CapExceeded,
    CycloError,
    NotDivisible,
    NotInvertible,
    OrderMismatch,
    VerificationFailed,
)
from .numtheory import FactoredInt, divisors, find_prime_cluster, moebius, primorial
from .polyring import IntPoly, TruncSeries, binomial_series, exact_div, mul, trunc_inverse, trunc_mul

__version__ = "0.1.0"
