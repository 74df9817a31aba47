"""p-Euler factors: the sum over K of G(p^K) c_{p^K}(a), which stops at K = v_p(a) + 1.

Two closed forms are computed independently and compared in the tests:

* telescoped:  sum_{K=0}^{v} p^K (G(p^K) - G(p^{K+1}))
* totient:     sum_{K=0}^{v} G(p^K) phi(p^K) - G(p^{v+1}) p^v
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

from .arith import _require_positive, _require_prime, p_adic_valuation, sorted_primes
from .coefficients import CoefficientSpec, Scalar, coeff_prime_power
from .ramanujan import c_prime_power


@dataclass(frozen=True)
class EulerFactorValue:
    p: int
    a: int
    v: int
    value: Scalar

    def __bool__(self) -> bool:
        return self.value != 0


def p_factor(spec: CoefficientSpec, p: int, a: int) -> EulerFactorValue:
    _require_prime(p)
    _require_positive(a, "a")
    v = p_adic_valuation(p, a)
    G = [coeff_prime_power(spec, p, K) for K in range(v + 2)]
    total: Scalar = Fraction(0)
    for K in range(v + 1):
        total += p**K * (G[K] - G[K + 1])
    return EulerFactorValue(int(p), int(a), v, total)


def p_factor_phi_form(spec: CoefficientSpec, p: int, a: int) -> EulerFactorValue:
    _require_prime(p)
    _require_positive(a, "a")
    v = p_adic_valuation(p, a)
    total: Scalar = Fraction(1)  # K = 0: G(1) phi(1)
    for K in range(1, v + 1):
        total += coeff_prime_power(spec, p, K) * (p**K - p ** (K - 1))
    total -= coeff_prime_power(spec, p, v + 1) * p**v
    return EulerFactorValue(int(p), int(a), v, total)


def p_factor_series(spec: CoefficientSpec, p: int, a: int) -> Scalar:
    """The K-series itself, sum_{K=0}^{v+1} G(p^K) c_{p^K}(a)."""
    v = p_adic_valuation(p, a)
    return sum(
        (coeff_prime_power(spec, p, K) * c_prime_power(p, K, a) for K in range(v + 2)),
        Fraction(0),
    )


@dataclass(frozen=True)
class NullVerdict:
    """Outcome of :func:`p_factor_is_null`.

    ``kind`` is ``null_exhaustive`` (G(p^K) = 1 declared for every K),
    ``null_up_to_bound`` (factor vanished for a = p^v, v <= k_max) or
    ``not_null`` with the smallest witness ``a = p^v`` and its factor.
    """

    p: int
    kind: str
    witness: Optional[int] = None
    factor: Optional[Scalar] = None
    k_max: Optional[int] = None

    @property
    def is_null(self) -> bool:
        return self.kind != "not_null"


def p_factor_is_null(spec: CoefficientSpec, p: int, k_max: int) -> NullVerdict:
    """Decide whether the p-factor vanishes for every a.

    Only v_p(a) matters, so testing a = p^v for v = 0..k_max covers every a
    with v_p(a) <= k_max.
    """
    _require_prime(p)
    if k_max < 1:
        raise ValueError(f"k_max must be >= 1, got {k_max}")
    rule = spec.rule_for(p)
    if rule is not None and rule.mode == "all_ones":
        return NullVerdict(int(p), "null_exhaustive")
    for v in range(k_max + 1):
        f = p_factor(spec, p, p**v).value
        if f != 0:
            return NullVerdict(int(p), "not_null", witness=p**v, factor=f)
    return NullVerdict(int(p), "null_up_to_bound", k_max=k_max)


def solve_next_prime_power(spec: CoefficientSpec, p: int, v: int) -> Scalar:
    """Recover G(p^(v+1)) from G(p^v) and the factors at a = p^(v-1), p^v.

    G(p^(v+1)) = G(p^v) - p^(-v) (E(v) - E(v-1)), E(v) the factor at a = p^v.
    """
    e_v = p_factor(spec, p, p**v).value
    e_prev = p_factor(spec, p, p ** (v - 1)).value if v >= 1 else Fraction(0)
    g_v = coeff_prime_power(spec, p, v)
    if v == 0:
        # E(0) = 1 - G(p)
        return g_v - e_v
    return g_v - Fraction(1, p**v) * (e_v - e_prev)


def finite_factor(spec: CoefficientSpec, primes: Iterable[int], a: int) -> Scalar:
    """Product of p-factors over a finite prime set; 1 for the empty set."""
    out: Scalar = Fraction(1)
    for p in sorted_primes(primes):
        out *= p_factor(spec, p, a).value
    return out
