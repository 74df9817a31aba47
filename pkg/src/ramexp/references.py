"""Reference constants computed without numeric library constants.

pi comes from Machin's arctangent formula in fixed-point integers, so 6/pi^2
does not depend on ``math.pi``; zeta(3) is a plain partial sum.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

import numpy as np


def _arctan_inv(x: int, scale: int) -> int:
    # arctan(1/x) * scale via the alternating Taylor series
    total = term = scale // x
    x2, n, sign = x * x, 3, -1
    while term:
        term //= x2
        total += sign * (term // n)
        n += 2
        sign = -sign
    return total


@lru_cache(maxsize=None)
def pi_fixed(digits: int = 30) -> Fraction:
    """pi to ``digits`` decimal places, as an exact rational."""
    guard = 10
    scale = 10 ** (digits + guard)
    pi = 4 * (4 * _arctan_inv(5, scale) - _arctan_inv(239, scale))
    return Fraction(pi // 10**guard, 10**digits)


def six_over_pi_squared(digits: int = 30) -> float:
    pi = pi_fixed(digits)
    return float(6 / (pi * pi))


def zeta3_partial(N: int = 1_000_000) -> float:
    """sum_{n <= N} n^(-3), summed with fsum; the missing tail is below 1/(2 N^2)."""
    n = np.arange(1, N + 1, dtype=float)
    return math.fsum(1.0 / (n * n * n))
