"""Exact Ramanujan expansions with multiplicative coefficients.

Ramanujan sums, multiplicative coefficient specs, p-Euler factors, truncated
and factored expansions with certified discrepancy bounds, and a
fixed-point classifier for membership in the cloud of the null function.
"""

from .arith import (
    CapacityError,
    SieveTables,
    build_sieve,
    divisors,
    factorize,
    is_coprime_to_set,
    is_prime,
    is_smooth,
    mobius_phi,
    p_adic_valuation,
    prime_divisors,
    primes_up_to,
    shared_sieve,
)
from .classifier import (
    CloudClassification,
    absolute_convergence_exclusion,
    classify,
    fact2_transfer_check,
)
from .coefficients import (
    CoefficientSpec,
    FixedPointReport,
    PrimeRule,
    SpecError,
    coeff_prime_power,
    coeff_value,
    coefficient_table,
    fixed_point_report,
    odd_cubes_two_ones,
    spec_digest,
    spec_from_dict,
    spec_from_json,
    spec_to_dict,
)
from .euler import (
    EulerFactorValue,
    finite_factor,
    p_factor,
    p_factor_is_null,
    p_factor_phi_form,
    p_factor_series,
)
from .expansions import (
    abs_convergence_report,
    cofinite_partial_sum,
    coprime_split_eval,
    direct_partial_sum,
    factored_eval,
    infinite_euler_product_eval,
    local_factored_eval,
    mobius_identity_check,
    nonvanishing_product_check,
    smooth_exact_eval,
    tail_majorant,
)
from .ramanujan import (
    OraclePrecisionError,
    RamanujanSumRow,
    c_batch,
    c_definition_oracle,
    c_holder,
    c_prime_power,
)
from .reports import dumps, loads, record, to_csv

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
