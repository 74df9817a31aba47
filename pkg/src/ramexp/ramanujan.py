"""Ramanujan sums c_q(a): Holder's closed form, the prime-power cases, and a
floating-point oracle that sums the roots of unity directly."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

import numpy as np

from .arith import (
    CapacityError,
    SieveTables,
    _require_positive,
    _require_prime,
    factorize,
    mobius_phi,
    p_adic_valuation,
    shared_sieve,
)

ORACLE_TOL = 1e-6
ORACLE_MAX_Q = 10_000


class OraclePrecisionError(ArithmeticError):
    """The floating-point oracle cannot resolve an integer to the tolerance."""


def c_holder(q: int, a: int) -> int:
    """c_q(a) = phi(q) * mu(q/g) / phi(q/g) with g = gcd(q, a)."""
    _require_positive(q, "q")
    _require_positive(a, "a")
    m = int(q) // math.gcd(int(q), int(a))
    mu_m, phi_m = mobius_phi(m)
    if mu_m == 0:
        return 0
    return mobius_phi(int(q))[1] * mu_m // phi_m


@lru_cache(maxsize=1024)
def _units(q: int) -> np.ndarray:
    j = np.arange(1, q + 1, dtype=np.int64)
    return j[np.gcd(j, q) == 1]


def c_definition_oracle(q: int, a: int, tol: float = ORACLE_TOL) -> int:
    """Sum exp(2*pi*i*j*a/q) over units j mod q in double precision.

    Returns the nearest integer. Raises :class:`OraclePrecisionError` when the
    imaginary part or the distance to that integer is not below ``tol``, or
    when ``q`` exceeds ``ORACLE_MAX_Q``.
    """
    _require_positive(q, "q")
    _require_positive(a, "a")
    if not 0 < tol < 0.5:
        raise ValueError(f"tol must lie in (0, 1/2), got {tol}")
    if q > ORACLE_MAX_Q:
        raise OraclePrecisionError(f"oracle is limited to q <= {ORACLE_MAX_Q}, got {q}")
    # reduce j*a mod q before scaling so the angle stays accurate
    angles = (2.0 * math.pi / q) * ((_units(int(q)) * (int(a) % q)) % q)
    re = float(np.cos(angles).sum())
    im = float(np.sin(angles).sum())
    nearest = round(re)
    if abs(im) >= tol or abs(re - nearest) >= tol:
        raise OraclePrecisionError(
            f"c_{q}({a}): residuals re={re - nearest:.3g}, im={im:.3g} exceed tol={tol}"
        )
    return int(nearest)


def c_prime_power(p: int, K: int, a: int) -> int:
    """c_{p^K}(a) from the valuation v = v_p(a).

    phi(p^K) if K <= v, -p^v if K = v + 1, and 0 beyond.
    """
    _require_prime(p)
    if K < 0:
        raise ValueError(f"K must be non-negative, got {K}")
    v = p_adic_valuation(p, a)
    if K == 0:
        return 1
    if K <= v:
        return p**K - p ** (K - 1)
    if K == v + 1:
        return -(p**v)
    return 0


@dataclass(frozen=True, eq=False)
class RamanujanSumRow:
    """c_q(a) for q = 1..Q at fixed a. ``values[q]`` is indexed by q; slot 0 is 0."""

    a: int
    Q: int
    values: np.ndarray

    def __getitem__(self, q: int) -> int:
        if not 1 <= q <= self.Q:
            raise IndexError(q)
        return int(self.values[q])

    def tolist(self) -> list[int]:
        return [int(v) for v in self.values[1:]]


def c_batch(a: int, Q: int, tables: Optional[SieveTables] = None) -> RamanujanSumRow:
    """Holder's formula for all q <= Q, with table lookups.

    gcd(q, a) is assembled from the factorization of ``a``: each prime power
    p^k dividing ``a`` multiplies the gcd of every multiple of p^k by p.
    """
    _require_positive(a, "a")
    _require_positive(Q, "Q")
    if tables is None:
        tables = shared_sieve(max(Q, 2))
    if Q > tables.limit:
        raise CapacityError(f"Q={Q} exceeds sieve limit {tables.limit}")
    g = np.ones(Q + 1, dtype=np.int64)
    for p, e in factorize(a):
        pk = p
        for _ in range(e):
            if pk > Q:
                break
            g[pk::pk] *= p
            pk *= p
    q = np.arange(1, Q + 1)
    m = q // g[1:]
    phi = tables.phi
    values = np.zeros(Q + 1, dtype=np.int64)
    values[1:] = phi[1 : Q + 1] * tables.mu[m] // phi[m]
    values.flags.writeable = False
    return RamanujanSumRow(a=int(a), Q=int(Q), values=values)
