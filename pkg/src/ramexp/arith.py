"""Integer primitives: factorization, Mobius/totient, valuations and batch sieves.

Exact scalars throughout the package are :class:`fractions.Fraction`, which is
always kept in lowest terms with a positive denominator.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Optional

import numpy as np

Rational = Fraction
FactorizationMap = list  # list[tuple[int, int]], primes increasing
PrimeSet = frozenset  # frozenset[int]

#: Default upper bound on ``build_sieve(limit)``. About 13 bytes per entry, so
#: the default costs roughly 650 MB. Override with ``RAMEXP_SIEVE_CAPACITY``.
DEFAULT_SIEVE_CAPACITY = 50_000_000
CAPACITY_ENV = "RAMEXP_SIEVE_CAPACITY"


class CapacityError(ValueError):
    """A requested size exceeds a table or configured capacity."""


def sieve_capacity() -> int:
    value = os.environ.get(CAPACITY_ENV)
    if value is None:
        return DEFAULT_SIEVE_CAPACITY
    try:
        cap = int(value)
    except ValueError:
        raise CapacityError(f"{CAPACITY_ENV}={value!r} is not an integer") from None
    if cap < 2:
        raise CapacityError(f"{CAPACITY_ENV} must be at least 2, got {cap}")
    return cap


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0 or n % 3 == 0:
        return False
    f = 5
    while f * f <= n:
        if n % f == 0 or n % (f + 2) == 0:
            return False
        f += 6
    return True


def _require_prime(p: int) -> None:
    if not isinstance(p, (int, np.integer)) or not is_prime(int(p)):
        raise ValueError(f"expected a prime, got {p!r}")


def _require_positive(n: int, name: str = "n") -> None:
    if not isinstance(n, (int, np.integer)) or n < 1:
        raise ValueError(f"{name} must be a positive integer, got {n!r}")


def prime_set(primes: Iterable[int]) -> PrimeSet:
    """Validate ``primes`` and return them as a frozenset."""
    out = frozenset(int(p) for p in primes)
    for p in out:
        _require_prime(p)
    return out


@dataclass(frozen=True, eq=False)
class SieveTables:
    """Smallest prime factor, Mobius and totient tables for ``1..limit``.

    Arrays are indexed directly by ``n`` (index 0 is padding) and are marked
    read-only so a table can be shared between threads.
    """

    limit: int
    spf: np.ndarray  # int32, spf[1] = 1
    mu: np.ndarray  # int8
    phi: np.ndarray  # int64

    @property
    def primes(self) -> np.ndarray:
        n = np.arange(self.limit + 1)
        return np.flatnonzero((self.spf == n) & (n >= 2))

    def __repr__(self) -> str:
        return f"SieveTables(limit={self.limit})"


def build_sieve(limit: int) -> SieveTables:
    """Build smallest-prime-factor, Mobius and totient tables up to ``limit``.

    The smallest prime factor comes from an Eratosthenes pass over primes up to
    ``sqrt(limit)``. Mobius and totient values then follow from
    ``n = p * m`` with ``p = spf[n]``; every ``m`` lies in an earlier dyadic
    block ``[2^k, 2^(k+1))`` so each block is one vectorized step.

    Raises:
        CapacityError: if ``limit < 2`` or above :func:`sieve_capacity`.
    """
    cap = sieve_capacity()
    if not isinstance(limit, (int, np.integer)) or limit < 2 or limit > cap:
        raise CapacityError(f"sieve limit must lie in [2, {cap}], got {limit!r}")
    limit = int(limit)

    spf = np.zeros(limit + 1, dtype=np.int32)
    spf[1] = 1
    for p in range(2, math.isqrt(limit) + 1):
        if spf[p] == 0:
            block = spf[p * p :: p]
            block[block == 0] = p
    unset = np.flatnonzero(spf == 0)
    spf[unset] = unset.astype(np.int32)
    spf[0] = 0

    mu = np.zeros(limit + 1, dtype=np.int8)
    phi = np.zeros(limit + 1, dtype=np.int64)
    mu[1] = 1
    phi[1] = 1
    lo = 2
    while lo <= limit:
        hi = min(2 * lo, limit + 1)
        n = np.arange(lo, hi)
        p = spf[lo:hi].astype(np.int64)
        m = n // p
        repeated = spf[m] == p
        mu[lo:hi] = np.where(repeated, 0, -mu[m])
        phi[lo:hi] = np.where(repeated, phi[m] * p, phi[m] * (p - 1))
        lo = hi

    for arr in (spf, mu, phi):
        arr.flags.writeable = False
    return SieveTables(limit=limit, spf=spf, mu=mu, phi=phi)


_shared: Optional[SieveTables] = None


def shared_sieve(limit: int) -> SieveTables:
    """Return a cached sieve covering at least ``limit``.

    Grows (never shrinks) the cached table, rounding up so repeated calls with
    slowly increasing limits do not rebuild every time.
    """
    global _shared
    if _shared is None or _shared.limit < limit:
        cap = sieve_capacity()
        if limit > cap:
            raise CapacityError(f"requested {limit} exceeds sieve capacity {cap}")
        target = max(limit, 2, min(cap, 2 * (_shared.limit if _shared else 0)))
        target = max(target, min(cap, 1 << 16))
        _shared = build_sieve(target)
    return _shared


def factorize(n: int, tables: Optional[SieveTables] = None) -> FactorizationMap:
    """Factor ``n`` into ``[(p, e), ...]`` with increasing primes.

    Uses ``tables`` when ``n`` is within its limit, trial division otherwise.
    """
    _require_positive(n)
    n = int(n)
    out = []
    if tables is not None and n <= tables.limit:
        spf = tables.spf
        while n > 1:
            p = int(spf[n])
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        return out
    for p in (2, 3):
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
    f = 5
    while f * f <= n:
        for p in (f, f + 2):
            if n % p == 0:
                e = 0
                while n % p == 0:
                    n //= p
                    e += 1
                out.append((p, e))
        f += 6
    if n > 1:
        out.append((n, 1))
    return out


def p_adic_valuation(p: int, a: int) -> int:
    """Largest ``K`` with ``p**K`` dividing ``a``."""
    _require_prime(p)
    _require_positive(a, "a")
    p, a = int(p), int(a)
    k = 0
    while a % p == 0:
        a //= p
        k += 1
    return k


@lru_cache(maxsize=65536)
def mobius_phi(n: int) -> tuple[int, int]:
    """Return ``(mu(n), phi(n))``."""
    mu, phi = 1, 1
    for p, e in factorize(n):
        mu = 0 if e > 1 else -mu
        phi *= p ** (e - 1) * (p - 1)
    return mu, phi


def prime_divisors(n: int) -> PrimeSet:
    return frozenset(p for p, _ in factorize(n))


def is_coprime_to_set(r: int, primes: Iterable[int]) -> bool:
    _require_positive(r, "r")
    return all(r % p for p in primes)


def is_smooth(n: int, bound: int) -> bool:
    """True iff every prime divisor of ``n`` is at most ``bound``."""
    _require_positive(n)
    if bound < 2:
        raise ValueError(f"smoothness bound must be >= 2, got {bound}")
    return all(p <= bound for p, _ in factorize(n))


def divisors(n: int) -> list[int]:
    divs = [1]
    for p, e in factorize(n):
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def primes_up_to(n: int) -> list[int]:
    if n < 2:
        return []
    flags = bytearray([1]) * (n + 1)
    flags[0] = flags[1] = 0
    for p in range(2, math.isqrt(n) + 1):
        if flags[p]:
            flags[p * p :: p] = bytearray(len(range(p * p, n + 1, p)))
    return [i for i, f in enumerate(flags) if f]


def sorted_primes(primes: Iterable[int]) -> list[int]:
    return sorted(int(p) for p in primes)
