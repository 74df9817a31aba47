"""Truncated Ramanujan expansions sum_q G(q) c_q(a) and their factorizations.

Every series is summed over increasing q and truncated at q <= Q. Exact mode
uses rationals; float mode uses numpy tables and compensated accumulation.
``mode="auto"`` picks exact arithmetic when the spec is rational and there are
at most ``EXACT_THRESHOLD`` candidate terms.

Error bounds only use |c_q(a)| <= phi(q), together with the vanishing of
c_{p^K}(a) for K > v_p(a) + 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, NamedTuple, Optional, Union

import numpy as np

from .arith import (
    CapacityError,
    PrimeSet,
    SieveTables,
    _require_positive,
    factorize,
    mobius_phi,
    p_adic_valuation,
    prime_divisors,
    prime_set,
    primes_up_to,
    shared_sieve,
    sorted_primes,
)
from .coefficients import (
    CoefficientSpec,
    Scalar,
    coeff_prime_power,
    coeff_value,
    coefficient_table,
    fixed_point_report,
)
from .euler import finite_factor, p_factor
from .ramanujan import c_batch, c_holder, c_prime_power
from .summation import checkpoint_sums

EXACT_THRESHOLD = 10_000
# exact Euler products are used up to this many primes in auto mode
EXACT_PRIME_THRESHOLD = 2_000
# float results carry an allowance of ROUNDING_FACTOR * eps * (sum of |terms|)
ROUNDING_FACTOR = 16
EPS = float(np.finfo(float).eps)

PrimeFilter = Union[Iterable[int], Callable[[int], bool]]


# results -----------------------------------------------------------------------


@dataclass(frozen=True)
class PartialSumSeries:
    """Checkpointed truncations of one series at fixed a.

    ``tail_bound`` bounds the remainder beyond the last checkpoint and is set
    only when a majorant is available for the spec.
    """

    a: int
    checkpoints: list
    mode: str
    order: str = "natural"
    tail_bound: Optional[float] = None

    @property
    def Q(self) -> int:
        return self.checkpoints[-1][0]

    @property
    def value(self) -> Scalar:
        return self.checkpoints[-1][1]

    def at(self, Q: int) -> Scalar:
        for q, v in self.checkpoints:
            if q == Q:
                return v
        raise KeyError(Q)


@dataclass(frozen=True)
class FactorizationResult:
    """Finite factor times truncated co-finite factor against the direct sum.

    ``tail_bound`` bounds ``|direct - product|``: the two truncations differ
    exactly by the pairs s*r > Q with r <= Q, which the phi bound controls.
    """

    F: PrimeSet
    a: int
    Q: int
    mode: str
    finite_factor: Scalar
    cofinite_truncated: Scalar
    product: Scalar
    direct_truncated: Scalar
    difference: Scalar
    discrepancy: float
    tail_bound: float

    @property
    def within_bound(self) -> bool:
        return self.discrepancy <= self.tail_bound


@dataclass(frozen=True)
class MobiusIdentityReport:
    d: int
    Q: int
    mode: str
    lhs: Scalar
    product_factor: Scalar
    rhs: Scalar
    difference: Scalar
    tail_bound: float

    @property
    def within_bound(self) -> bool:
        return abs(float(self.difference)) <= self.tail_bound


@dataclass(frozen=True, eq=False)
class EulerProductTrace:
    """Product of p-factors over p <= p_max with the running partial products.

    ``value`` is exact in exact mode and whenever some factor vanishes
    exactly (then ``vanishing_prime`` names the first such prime).
    """

    a: int
    p_max: int
    mode: str
    value: Scalar
    primes: np.ndarray
    partial_products: np.ndarray
    coprime_part: Scalar
    divisor_part: Scalar
    vanishing_prime: Optional[int] = None


@dataclass(frozen=True)
class CoprimeSplitReport:
    a: int
    Q: int
    p_max: int
    mode: str
    s_factor: Scalar
    r_factor: Scalar
    product: Scalar
    direct_truncated: Scalar
    difference: Scalar
    tail_bound: float
    euler_s: Scalar
    euler_r: Scalar
    euler_product: Scalar


@dataclass(frozen=True)
class AbsConvergenceReport:
    """Partial sums of |G(q) c_q(a)|.

    ``certified`` is True when a closed-form majorant bounds the remainder;
    otherwise ``note`` explains why none is available.
    """

    a: int
    checkpoints: list
    tail_bound: Optional[float]
    certified: bool
    note: str

    @property
    def increments(self) -> list:
        vals = [v for _, v in self.checkpoints]
        return [b - a for a, b in zip(vals, vals[1:])]


@dataclass(frozen=True, eq=False)
class NonvanishingReport:
    """Partial products of (1 - G(p)) over primes p <= p_max outside F."""

    F: PrimeSet
    p_max: int
    verdict: str
    violating_prime: Optional[int]
    min_modulus: float
    final_product: float
    abs_sum: float
    primes: np.ndarray
    partial_products: np.ndarray


# term selection ------------------------------------------------------------------


class _Coprime:
    """Keep q coprime to every prime in ``primes``."""

    def __init__(self, primes: Iterable[int]):
        self.primes = sorted_primes(primes)

    def test(self, q: int) -> bool:
        return all(q % p for p in self.primes)

    def mask(self, Q: int, tables: SieveTables) -> np.ndarray:
        m = np.ones(Q + 1, dtype=bool)
        for p in self.primes:
            m[p::p] = False
        return m


class _SupportedOn:
    """Keep q whose prime divisors all pass ``pred`` (q = 1 always kept)."""

    def __init__(self, pred: Callable[[int], bool]):
        self.pred = pred

    def test(self, q: int) -> bool:
        return all(self.pred(p) for p, _ in factorize(q))

    def mask(self, Q: int, tables: SieveTables) -> np.ndarray:
        ok_prime = np.zeros(Q + 1, dtype=bool)
        for p in tables.primes[tables.primes <= Q]:
            ok_prime[p] = self.pred(int(p))
        spf = tables.spf
        m = np.zeros(Q + 1, dtype=bool)
        m[1] = True
        lo = 2
        while lo <= Q:
            hi = min(2 * lo, Q + 1)
            n = np.arange(lo, hi)
            p = spf[lo:hi]
            m[lo:hi] = ok_prime[p] & m[n // p]
            lo = hi
        return m


def _as_predicate(primes: PrimeFilter) -> Callable[[int], bool]:
    if callable(primes):
        return primes
    members = prime_set(primes)
    return members.__contains__


# helpers -----------------------------------------------------------------------


def _tables(tables: Optional[SieveTables], Q: int) -> SieveTables:
    if tables is None:
        return shared_sieve(max(Q, 2))
    if tables.limit < Q:
        raise CapacityError(f"Q={Q} exceeds sieve limit {tables.limit}")
    return tables


@lru_cache(maxsize=128)
def finite_support(spec: CoefficientSpec, limit: int = 200_000) -> Optional[tuple]:
    """Sorted ``(q, G(q))`` over the support of G when it is finite, else None."""
    if not spec.base_is_zero or not spec.is_inspectable:
        return None
    elems = [(1, Fraction(1))]
    for rule in spec.rules:
        if rule.mode == "all_ones":
            return None
        ladder = [(rule.p**k, v) for k, v in enumerate(rule.values, start=1) if v != 0]
        if ladder:
            elems = elems + [(q * pk, g * v) for q, g in elems for pk, v in ladder]
        if len(elems) > limit:
            return None
    return tuple(sorted(elems))


@lru_cache(maxsize=8)
def _coeff_table_cached(spec: CoefficientSpec, Q: int, tables: SieveTables) -> np.ndarray:
    out = coefficient_table(spec, Q, tables)
    out.flags.writeable = False
    return out


def _coeff_table(spec: CoefficientSpec, Q: int, tables: SieveTables) -> np.ndarray:
    if not spec.is_inspectable:
        return coefficient_table(spec, Q, tables)
    return _coeff_table_cached(spec, Q, tables)


def _kernel_array(kernel: str, a: int, Q: int, tables: SieveTables) -> np.ndarray:
    if kernel == "c":
        return c_batch(a, Q, tables).values
    return tables.mu[: Q + 1]


def _kernel_value(kernel: str, q: int, a: int) -> int:
    return c_holder(q, a) if kernel == "c" else mobius_phi(q)[0]


def _normalize_checkpoints(checkpoints: Optional[Iterable[int]], Q: int) -> list:
    _require_positive(Q, "Q")
    cps = sorted(set(int(c) for c in (checkpoints or ())) | {int(Q)})
    if cps[0] < 1 or cps[-1] > Q:
        raise ValueError(f"checkpoints must lie in [1, {Q}]")
    return cps


def decade_checkpoints(Q: int) -> list:
    out, c = [], 10
    while c < Q:
        out.append(c)
        c *= 10
    return out + [Q]


def _resolve_mode(spec: CoefficientSpec, n_terms: int, mode: str, threshold: int) -> str:
    if mode not in ("auto", "exact", "float"):
        raise ValueError(f"mode must be auto, exact or float, got {mode!r}")
    if mode == "exact":
        if not spec.is_exact:
            raise ValueError("exact mode needs rational coefficients (integer exponent)")
        if n_terms > threshold:
            raise CapacityError(
                f"exact mode limited to {threshold} terms, got {n_terms}; "
                "use float mode or raise exact_threshold"
            )
        return "exact"
    if mode == "auto":
        return "exact" if spec.is_exact and n_terms <= threshold else "float"
    return "float"


class _Series(NamedTuple):
    values: list
    mode: str
    abs_mass: float  # sum of |terms| in float mode, 0 in exact mode


def _series(
    spec: CoefficientSpec,
    a: int,
    Q: int,
    checkpoints: list,
    mode: str,
    keep=None,
    kernel: str = "c",
    tables: Optional[SieveTables] = None,
    exact_threshold: int = EXACT_THRESHOLD,
) -> _Series:
    _require_positive(a, "a")
    support = finite_support(spec)
    if support is not None:
        cands = [(q, g) for q, g in support if q <= Q]
        n_terms = len(cands)
    else:
        cands = None
        n_terms = Q
    mode = _resolve_mode(spec, n_terms, mode, exact_threshold)

    if mode == "exact":
        terms = []
        if cands is not None:
            for q, g in cands:
                if keep is None or keep.test(q):
                    k = _kernel_value(kernel, q, a)
                    if k:
                        terms.append((q, g * k))
        else:
            tables = _tables(tables, Q)
            kvals = _kernel_array(kernel, a, Q, tables)
            for q in range(1, Q + 1):
                k = int(kvals[q])
                if k == 0 or (keep is not None and not keep.test(q)):
                    continue
                g = coeff_value(spec, q, tables)
                if g:
                    terms.append((q, g * k))
        return _Series(_exact_checkpoints(terms, checkpoints), "exact", 0.0)

    tables = _tables(tables, Q)
    t = _coeff_table(spec, Q, tables) * _kernel_array(kernel, a, Q, tables)
    if keep is not None:
        t = t * keep.mask(Q, tables)
    return _Series(checkpoint_sums(t, checkpoints), "float", math.fsum(np.abs(t)))


def _exact_checkpoints(terms: list, checkpoints: list) -> list:
    # one common denominator keeps the running sum in integers
    L = 1
    for _, t in terms:
        L = math.lcm(L, t.denominator)
    acc, i, out = 0, 0, []
    for Qc in checkpoints:
        while i < len(terms) and terms[i][0] <= Qc:
            t = terms[i][1]
            acc += t.numerator * (L // t.denominator)
            i += 1
        out.append(Fraction(acc, L))
    return out


def _rounding(*masses: float) -> float:
    return ROUNDING_FACTOR * EPS * (1.0 + sum(masses))


def _to_mode(x: Scalar, mode: str) -> Scalar:
    return x if mode == "exact" else float(x)


# majorants -----------------------------------------------------------------------


def _prime_part_terms(spec: CoefficientSpec, primes: Iterable[int], a: int) -> list:
    """``(s, G(s) c_s(a))`` over s built from ``primes`` with c_s(a) != 0."""
    items = [(1, Fraction(1))]
    for p in sorted_primes(primes):
        v = p_adic_valuation(p, a)
        ladder = [(1, 1)] + [
            (p**K, coeff_prime_power(spec, p, K) * c_prime_power(p, K, a)) for K in range(1, v + 2)
        ]
        items = [(s * pk, t * u) for s, t in items for pk, u in ladder]
    return [(s, t) for s, t in items if t != 0]


def tail_majorant(spec: CoefficientSpec, a: int, Q: int) -> Optional[float]:
    """Upper bound for sum_{q > Q} |G(q) c_q(a)|, or None without a majorant.

    Write q = s*m with s built from the overridden primes A and m coprime to
    A. Only s with c_s(a) != 0 matter, a finite set. On m the base family
    applies: for q^(-s) with s > 2, |G(m) c_m(a)| <= m^(1-s), whose tail past
    x is at most floor(x)^(2-s)/(s-2); for a zero base only m = 1 remains.
    Totient reciprocals and exponents s <= 2 have no such majorant.
    """
    if not spec.is_inspectable:
        return None
    if spec.family == "power" and spec.s > 2:
        s = float(spec.s)

        def tail(x: float) -> float:
            n = math.floor(x)
            return n ** (2.0 - s) / (s - 2.0) if n >= 1 else 1.0 + 1.0 / (s - 2.0)

    elif spec.base_is_zero:

        def tail(x: float) -> float:
            return 1.0 if x < 1 else 0.0

    else:
        return None
    total = 0.0
    for s_val, t in _prime_part_terms(spec, spec.override_primes(), a):
        total += abs(float(t)) * tail(Q / s_val)
    return total


def _window_bound(
    spec: CoefficientSpec,
    F: Iterable[int],
    a: int,
    Q: int,
    kernel: str,
    tables: Optional[SieveTables],
) -> float:
    """Bound |direct(Q) - finite * cofinite(Q)| for the prime set F.

    The difference is -sum_s G(s) c_s(a) sum_{Q/s < r <= Q, (r,F)=1} G(r) c_r(a)
    over the finitely many s in S_F; |c_r(a)| <= phi(r) (|mu(r)| for the
    Mobius kernel) bounds each window.
    """
    s_terms = _prime_part_terms(spec, F, a)
    s_terms = [(s, t) for s, t in s_terms if s > 1]
    if not s_terms:
        return 0.0
    keep = _Coprime(F)
    support = finite_support(spec)
    if support is not None:
        idx, w = [], []
        for r, g in support:
            if r <= Q and keep.test(r):
                idx.append(r)
                weight = mobius_phi(r)[1] if kernel == "c" else abs(mobius_phi(r)[0])
                w.append(abs(float(g)) * weight)
        idx = np.asarray(idx, dtype=np.int64)
        w = np.asarray(w, dtype=float)
    else:
        tables = _tables(tables, Q)
        G = np.abs(_coeff_table(spec, Q, tables))
        weight = tables.phi[: Q + 1] if kernel == "c" else np.abs(tables.mu[: Q + 1])
        w = G * weight * keep.mask(Q, tables)
        idx = np.arange(Q + 1)
    return _pair_window(s_terms, idx, w, Q)


def _pair_window(s_terms, r_idx: np.ndarray, r_w: np.ndarray, Q: int) -> float:
    """sum_s |t_s| * sum_{Q//s < r <= Q} w_r for sorted r_idx."""
    cum = np.concatenate([[0.0], np.cumsum(r_w)])

    def prefix(x):
        return cum[np.searchsorted(r_idx, x, side="right")]

    s_idx = np.array([s for s, _ in s_terms], dtype=np.int64)
    s_w = np.array([abs(float(t)) for _, t in s_terms])
    windows = prefix(Q) - prefix(Q // s_idx)
    return float(np.dot(s_w, windows))


# series ----------------------------------------------------------------------------


def direct_partial_sum(
    spec: CoefficientSpec,
    a: int,
    Q: int,
    checkpoints: Optional[Iterable[int]] = None,
    mode: str = "auto",
    tables: Optional[SieveTables] = None,
    exact_threshold: int = EXACT_THRESHOLD,
) -> PartialSumSeries:
    """sum_{q <= Q_i} G(q) c_q(a) at each checkpoint Q_i (Q always included)."""
    cps = _normalize_checkpoints(checkpoints, Q)
    res = _series(spec, a, Q, cps, mode, tables=tables, exact_threshold=exact_threshold)
    return PartialSumSeries(
        a=int(a),
        checkpoints=list(zip(cps, res.values)),
        mode=res.mode,
        tail_bound=tail_majorant(spec, a, Q),
    )


def cofinite_partial_sum(
    spec: CoefficientSpec,
    F: Iterable[int],
    a: int,
    Q: int,
    mode: str = "auto",
    tables: Optional[SieveTables] = None,
    exact_threshold: int = EXACT_THRESHOLD,
) -> Scalar:
    """sum_{r <= Q, (r, F) = 1} G(r) c_r(a)."""
    F = prime_set(F)
    cps = _normalize_checkpoints(None, Q)
    keep = _Coprime(F) if F else None
    res = _series(spec, a, Q, cps, mode, keep, tables=tables, exact_threshold=exact_threshold)
    return res.values[-1]


def factored_eval(
    spec: CoefficientSpec,
    F: Iterable[int],
    a: int,
    Q: int,
    mode: str = "auto",
    tables: Optional[SieveTables] = None,
    exact_threshold: int = EXACT_THRESHOLD,
) -> FactorizationResult:
    """Compare the direct truncation with finite factor x co-finite truncation."""
    F = prime_set(F)
    if not F:
        raise ValueError("F must be a non-empty prime set; use direct_partial_sum for F = {}")
    return _factorization(spec, F, a, Q, mode, "c", tables, exact_threshold)


def local_factored_eval(
    spec: CoefficientSpec,
    a: int,
    Q: int,
    mode: str = "auto",
    tables: Optional[SieveTables] = None,
    exact_threshold: int = EXACT_THRESHOLD,
) -> FactorizationResult:
    """Factorization over F = P(a); the co-finite series then carries mu(r)."""
    _require_positive(a, "a")
    return _factorization(spec, prime_divisors(a), a, Q, mode, "mu", tables, exact_threshold)


def _factorization(spec, F, a, Q, mode, cof_kernel, tables, exact_threshold):
    cps = [int(Q)]
    _require_positive(Q, "Q")
    direct = _series(spec, a, Q, cps, mode, tables=tables, exact_threshold=exact_threshold)
    keep = _Coprime(F) if F else None
    cof = _series(
        spec, a, Q, cps, direct.mode, keep, cof_kernel, tables=tables, exact_threshold=exact_threshold
    )
    mode = direct.mode
    fin = _to_mode(finite_factor(spec, F, a), mode)
    product = fin * cof.values[0]
    difference = direct.values[0] - product
    bound = _window_bound(spec, F, a, Q, cof_kernel, tables)
    if mode == "float":
        bound += _rounding(direct.abs_mass, abs(fin) * cof.abs_mass)
    return FactorizationResult(
        F=frozenset(F),
        a=int(a),
        Q=int(Q),
        mode=mode,
        finite_factor=fin,
        cofinite_truncated=cof.values[0],
        product=product,
        direct_truncated=direct.values[0],
        difference=difference,
        discrepancy=abs(float(difference)),
        tail_bound=bound,
    )


def mobius_identity_check(
    spec: CoefficientSpec,
    d: int,
    Q: int,
    mode: str = "auto",
    tables: Optional[SieveTables] = None,
    exact_threshold: int = EXACT_THRESHOLD,
) -> MobiusIdentityReport:
    """sum_q G(q) mu(q) against prod_{p|d} (1 - G(p)) * sum_{(r,d)=1} G(r) mu(r)."""
    _require_positive(d, "d")
    F = prime_divisors(d)
    cps = [int(Q)]
    lhs = _series(spec, 1, Q, cps, mode, None, "mu", tables, exact_threshold)
    rhs = _series(spec, 1, Q, cps, lhs.mode, _Coprime(F) if F else None, "mu", tables, exact_threshold)
    factor: Scalar = Fraction(1)
    for p in sorted(F):
        factor *= 1 - coeff_prime_power(spec, p, 1)
    factor = _to_mode(factor, lhs.mode)
    difference = lhs.values[0] - factor * rhs.values[0]
    bound = _window_bound(spec, F, 1, Q, "mu", tables)
    if lhs.mode == "float":
        bound += _rounding(lhs.abs_mass, abs(factor) * rhs.abs_mass)
    return MobiusIdentityReport(
        d=int(d),
        Q=int(Q),
        mode=lhs.mode,
        lhs=lhs.values[0],
        product_factor=factor,
        rhs=rhs.values[0],
        difference=difference,
        tail_bound=bound,
    )


def support_sum(spec: CoefficientSpec, a: int) -> Fraction:
    """sum G(s) c_s(a) over the smooth support, cut at K <= v_p(a) + 1 per prime."""
    bound = spec.declared_smooth_bound
    primes = [p for p in primes_up_to(bound)]
    return sum((t for _, t in _prime_part_terms(spec, primes, a)), Fraction(0))


def smooth_exact_eval(spec: CoefficientSpec, a: int) -> Fraction:
    """Exact value of the whole expansion for G supported on smooth numbers.

    The expansion has finitely many nonzero terms; the product of p-factors
    over p up to the smooth bound is checked against their direct sum.
    """
    _require_positive(a, "a")
    if spec.declared_smooth_bound is None:
        raise ValueError("spec has no declared_smooth_bound")
    if not spec.is_exact:
        raise ValueError("smooth_exact_eval needs rational coefficients")
    value = Fraction(1)
    for p in primes_up_to(spec.declared_smooth_bound):
        value *= p_factor(spec, p, a).value
    direct = support_sum(spec, a)
    if direct != value:
        raise ArithmeticError(f"product {value} disagrees with support sum {direct}")
    return value


# Euler products ------------------------------------------------------------------------


def _prime_values(spec: CoefficientSpec, primes: np.ndarray) -> np.ndarray:
    """Float G(p) for an array of primes."""
    pf = primes.astype(np.float64)
    if spec.family == "power":
        g = pf ** (-float(spec.s))
    elif spec.family == "totient_reciprocal":
        g = 1.0 / (pf - 1.0)
    else:
        g = np.zeros(len(primes))
    pos = {int(p): i for i, p in enumerate(primes)} if spec.rules else {}
    for rule in spec.rules:
        i = pos.get(rule.p)
        if i is not None:
            g[i] = float(coeff_prime_power(spec, rule.p, 1))
    return g


def _primes_to(p_max: int) -> np.ndarray:
    if p_max <= 100_000:
        return np.asarray(primes_up_to(p_max), dtype=np.int64)
    t = shared_sieve(p_max)
    pr = t.primes
    return pr[pr <= p_max].astype(np.int64)


def _euler_over(spec, a, primes: np.ndarray, mode: str):
    """(value, float partial products, coprime part, divisor part, first zero)."""
    pos = {int(p): i for i, p in enumerate(primes)}
    factors = 1.0 - _prime_values(spec, primes)
    div = {p: p_factor(spec, p, a).value for p in prime_divisors(a) if p in pos}
    for p, v in div.items():
        factors[pos[p]] = float(v)
    # exact zeros: G(p) = 1 at a prime not dividing a, or a vanishing divisor factor
    zeros = [p for p in fixed_point_report(spec, 2, 1).F_of_G if p in pos and p not in div]
    zeros += [p for p, v in div.items() if v == 0]
    for p in zeros:
        factors[pos[p]] = 0.0
    first_zero = min(zeros) if zeros else None
    trace = np.cumprod(factors)

    divisor_part: Scalar = Fraction(1)
    for v in div.values():
        divisor_part *= v
    if mode == "exact":
        num, den = 1, 1
        for p in primes:
            p = int(p)
            if p not in div:
                f = 1 - coeff_prime_power(spec, p, 1)
                num *= f.numerator
                den *= f.denominator
        coprime_part: Scalar = Fraction(num, den)
        return coprime_part * divisor_part, trace, coprime_part, divisor_part, first_zero
    keep = np.array([int(p) not in div for p in primes], dtype=bool)
    if any(p not in div for p in zeros):
        coprime_part = Fraction(0)
    else:
        coprime_part = float(np.prod(factors[keep]))
    if first_zero is not None:
        value: Scalar = Fraction(0)
    else:
        value = coprime_part * float(divisor_part)
    return value, trace, coprime_part, divisor_part, first_zero


def infinite_euler_product_eval(
    spec: CoefficientSpec,
    a: int,
    p_max: int,
    mode: str = "auto",
) -> EulerProductTrace:
    """prod_{p <= p_max} of the p-factors at a, with the running products.

    For p not dividing a the factor is 1 - G(p), so the value also splits as
    ``coprime_part * divisor_part``.
    """
    _require_positive(a, "a")
    if p_max < 2:
        raise ValueError(f"p_max must be >= 2, got {p_max}")
    primes = _primes_to(p_max)
    if mode == "auto":
        mode = "exact" if spec.is_exact and len(primes) <= EXACT_PRIME_THRESHOLD else "float"
    elif mode == "exact" and not spec.is_exact:
        raise ValueError("exact mode needs rational coefficients")
    value, trace, cp, dp, zero = _euler_over(spec, a, primes, mode)
    return EulerProductTrace(
        a=int(a),
        p_max=int(p_max),
        mode=mode,
        value=value,
        primes=primes,
        partial_products=trace,
        coprime_part=cp,
        divisor_part=dp,
        vanishing_prime=zero,
    )


def coprime_split_eval(
    spec: CoefficientSpec,
    S_primes: PrimeFilter,
    a: int,
    Q: int,
    p_max: int,
    mode: str = "auto",
    tables: Optional[SieveTables] = None,
    exact_threshold: int = EXACT_THRESHOLD,
) -> CoprimeSplitReport:
    """Split N into numbers built from primes in S and numbers coprime to S.

    Reports both truncated factors, their product against the direct sum, and
    the matching products of p-factors over p <= p_max on each side.
    """
    _require_positive(a, "a")
    pred = _as_predicate(S_primes)
    cps = [int(Q)]
    s_keep = _SupportedOn(pred)
    r_keep = _SupportedOn(lambda p: not pred(p))
    direct = _series(spec, a, Q, cps, mode, tables=tables, exact_threshold=exact_threshold)
    mode = direct.mode
    s_ser = _series(spec, a, Q, cps, mode, s_keep, tables=tables, exact_threshold=exact_threshold)
    r_ser = _series(spec, a, Q, cps, mode, r_keep, tables=tables, exact_threshold=exact_threshold)
    product = s_ser.values[0] * r_ser.values[0]
    difference = direct.values[0] - product

    # |direct - s*r| <= sum_{s <= Q} |G(s) c_s(a)| * sum_{Q//s < r <= Q} |G(r)| phi(r)
    t = _tables(tables, Q)
    G = np.abs(_coeff_table(spec, Q, t))
    cabs = np.abs(c_batch(a, Q, t).values)
    s_mask = s_keep.mask(Q, t)
    s_idx = np.flatnonzero(s_mask & (G * cabs > 0))
    s_idx = s_idx[s_idx > 1]
    s_terms = [(int(s), G[s] * cabs[s]) for s in s_idx]
    r_w = G * t.phi[: Q + 1] * r_keep.mask(Q, t)
    bound = _pair_window(s_terms, np.arange(Q + 1), r_w, Q) if s_terms else 0.0
    if mode == "float":
        bound += _rounding(direct.abs_mass, s_ser.abs_mass * r_ser.abs_mass)

    primes = _primes_to(p_max)
    in_s = np.array([bool(pred(int(p))) for p in primes], dtype=bool)
    emode = "exact" if mode == "exact" and len(primes) <= EXACT_PRIME_THRESHOLD else "float"
    euler_s = _euler_over(spec, a, primes[in_s], emode)[0]
    euler_r = _euler_over(spec, a, primes[~in_s], emode)[0]
    return CoprimeSplitReport(
        a=int(a),
        Q=int(Q),
        p_max=int(p_max),
        mode=mode,
        s_factor=s_ser.values[0],
        r_factor=r_ser.values[0],
        product=product,
        direct_truncated=direct.values[0],
        difference=difference,
        tail_bound=float(bound),
        euler_s=euler_s,
        euler_r=euler_r,
        euler_product=euler_s * euler_r,
    )


# absolute convergence ----------------------------------------------------------------------


def abs_convergence_report(
    spec: CoefficientSpec,
    a: int,
    Q: int,
    checkpoints: Optional[Iterable[int]] = None,
    tables: Optional[SieveTables] = None,
) -> AbsConvergenceReport:
    """Partial sums of |G(q) c_q(a)| plus a majorant for the remainder."""
    _require_positive(a, "a")
    cps = _normalize_checkpoints(checkpoints if checkpoints is not None else decade_checkpoints(Q), Q)
    t = _tables(tables, Q)
    terms = np.abs(_coeff_table(spec, Q, t)) * np.abs(c_batch(a, Q, t).values)
    sums = checkpoint_sums(terms, cps)
    bound = tail_majorant(spec, a, Q)
    if bound is not None:
        note = "majorant from |c_q(a)| <= phi(q)"
    elif spec.family == "power":
        note = f"no majorant: sum phi(q) q^(-{spec.s}) diverges"
    elif spec.family == "totient_reciprocal":
        note = "no majorant: |G(q)| phi(q) = 1 for every q"
    else:
        note = "no majorant for opaque overrides"
    return AbsConvergenceReport(
        a=int(a),
        checkpoints=list(zip(cps, sums)),
        tail_bound=bound,
        certified=bound is not None,
        note=note,
    )


def nonvanishing_product_check(
    spec: CoefficientSpec, F: Iterable[int], p_max: int
) -> NonvanishingReport:
    """Scan prod (1 - G(p)) over primes p <= p_max outside F.

    The product can only stay away from zero if G(p) = 1 forces p into F;
    the first prime breaking that is reported as a violation.
    """
    F = prime_set(F)
    if p_max < 2:
        raise ValueError(f"p_max must be >= 2, got {p_max}")
    primes = _primes_to(p_max)
    primes = primes[~np.isin(primes, sorted(F))] if F else primes
    g = _prime_values(spec, primes)
    fixed = fixed_point_report(spec, max(p_max, 2), 1).F_of_G
    violators = sorted(p for p in fixed if p not in F and p <= p_max)
    factors = 1.0 - g
    for p in violators:
        factors[np.searchsorted(primes, p)] = 0.0
    partial = np.cumprod(factors) if len(factors) else np.ones(0)
    abs_sum = math.fsum(np.abs(g))
    min_mod = float(np.min(np.abs(partial))) if len(partial) else 1.0
    if violators:
        verdict = "hypothesis_violated"
    elif min_mod > 0:
        verdict = "bounded_away_from_zero"
    else:
        verdict = "vanishes_at_scan"
    return NonvanishingReport(
        F=F,
        p_max=int(p_max),
        verdict=verdict,
        violating_prime=violators[0] if violators else None,
        min_modulus=min_mod,
        final_product=float(partial[-1]) if len(partial) else 1.0,
        abs_sum=abs_sum,
        primes=primes,
        partial_products=partial,
    )
