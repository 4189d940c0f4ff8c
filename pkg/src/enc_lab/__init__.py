"""Exact minimal log discrepancies and enc detection for cyclic quotient and hyperquotient threefold germs."""

from .exact import Monomial, MonomialSupport, Rat, Weight, complement, frac, fractional_vector, weight_of_monomial, weight_of_series
from .hyperquotient import BetaResult, HyperquotientGerm, beta_search, classify_low_values, validate_setting
from .toric import (
    Boundary,
    CyclicQuotient,
    ToricDivisorRecord,
    is_enc_cyclic_quotient,
    low_discrepancy_divisors,
    mld_cyclic_quotient,
    mld_with_boundary,
)

__all__ = [
    "BetaResult",
    "Boundary",
    "CyclicQuotient",
    "HyperquotientGerm",
    "Monomial",
    "MonomialSupport",
    "Rat",
    "ToricDivisorRecord",
    "Weight",
    "beta_search",
    "classify_low_values",
    "complement",
    "frac",
    "fractional_vector",
    "is_enc_cyclic_quotient",
    "low_discrepancy_divisors",
    "mld_cyclic_quotient",
    "mld_with_boundary",
    "validate_setting",
    "weight_of_monomial",
    "weight_of_series",
]
