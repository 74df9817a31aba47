"""Identity batteries behind ``ramexp verify``.

Each suite returns a :class:`SuiteResult` with case and failure counts plus
the first few failing cases. Randomized parts take a seed and are
deterministic for a given seed.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .arith import primes_up_to
from .coefficients import CoefficientSpec, PrimeRule, coeff_prime_power, odd_cubes_two_ones
from .euler import p_factor, p_factor_phi_form, p_factor_series
from .expansions import (
    direct_partial_sum,
    factored_eval,
    finite_support,
    infinite_euler_product_eval,
    smooth_exact_eval,
)
from .ramanujan import c_definition_oracle, c_holder
from .references import six_over_pi_squared, zeta3_partial

SUITES = ("holder", "main-lemma", "main-theorem", "euler-product")
MAX_EXAMPLES = 10


@dataclass
class SuiteResult:
    suite: str
    cases: int = 0
    failures: int = 0
    examples: list = field(default_factory=list)
    details: dict = field(default_factory=dict)
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return self.failures == 0 and self.cases > 0

    def check(self, ok: bool, what) -> None:
        self.cases += 1
        if not ok:
            self.failures += 1
            if len(self.examples) < MAX_EXAMPLES:
                self.examples.append(what)

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{self.suite}: {status}, {self.cases} cases, {self.failures} failures ({self.elapsed:.2f} s)"


def _timed(fn: Callable[..., SuiteResult]) -> Callable[..., SuiteResult]:
    def wrapper(*args, **kwargs):
        t0 = time.perf_counter()
        res = fn(*args, **kwargs)
        res.elapsed = time.perf_counter() - t0
        return res

    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


def named_specs() -> dict:
    return {
        "power s=1": CoefficientSpec.power(1),
        "power s=2": CoefficientSpec.power(2),
        "power s=3": CoefficientSpec.power(3),
        "totient_reciprocal": CoefficientSpec.totient_reciprocal(),
        "odd cubes, ones at 2": odd_cubes_two_ones(),
    }


def _random_rational(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(-9, 9), rng.randint(1, 9))


def random_smooth_spec(rng: random.Random, max_bound: int = 7, max_len: int = 3) -> CoefficientSpec:
    """Custom spec on a random non-empty set of primes <= max_bound, zero elsewhere."""
    pool = primes_up_to(max_bound)
    chosen = [p for p in pool if rng.random() < 0.6] or [rng.choice(pool)]
    rules = []
    for p in chosen:
        ladder = [_random_rational(rng) for _ in range(rng.randint(1, max_len))]
        rules.append(PrimeRule.explicit(p, ladder, tail="zero"))
    return CoefficientSpec.custom(rules, declared_smooth_bound=max(chosen))


def random_ladder_spec(rng: random.Random, p: int, length: int = 8) -> CoefficientSpec:
    """Ladder at p that is all ones, or all ones with a few random entries changed."""
    values = [Fraction(1)] * length
    if rng.random() < 0.5:
        for _ in range(rng.randint(1, 3)):
            values[rng.randrange(length)] = _random_rational(rng)
    return CoefficientSpec.custom([PrimeRule.explicit(p, values, tail="zero")])


@_timed
def holder_suite(max_n: int = 256) -> SuiteResult:
    """c_holder(q, a) against the roots-of-unity oracle for all q, a <= max_n."""
    res = SuiteResult("holder")
    for q in range(1, max_n + 1):
        for a in range(1, max_n + 1):
            h, o = c_holder(q, a), c_definition_oracle(q, a)
            res.check(h == o, (q, a, h, o))
    return res


@_timed
def main_lemma_suite(
    p_max: int = 13, a_max: int = 2000, n_random: int = 100, v_max: int = 6, seed: int = 0
) -> SuiteResult:
    """Both closed forms of the p-factor, the K-series, and the zero-factor equivalence."""
    res = SuiteResult("main-lemma")
    primes = primes_up_to(p_max)
    for name, spec in named_specs().items():
        for p in primes:
            for a in range(1, a_max + 1):
                t = p_factor(spec, p, a).value
                phi = p_factor_phi_form(spec, p, a).value
                ser = p_factor_series(spec, p, a)
                res.check(t == phi == ser, (name, p, a, t, phi, ser))
    for p in primes:
        spec = CoefficientSpec.power(2, [PrimeRule.all_ones(p)])
        for a in range(1, a_max + 1):
            res.check(p_factor(spec, p, a).value == 0, ("all_ones", p, a))
    rng = random.Random(seed)
    nulls = 0
    for i in range(n_random):
        p = rng.choice(primes)
        spec = random_ladder_spec(rng, p, v_max + 2)
        vanishes = all(p_factor(spec, p, p**v).value == 0 for v in range(v_max + 1))
        ones = all(coeff_prime_power(spec, p, K) == 1 for K in range(1, v_max + 2))
        nulls += vanishes
        # vanishing up to v_max must force G(p^K) = 1 for K <= v_max + 1, and back
        res.check(vanishes == ones, ("random ladder", i, p, vanishes, ones))
    res.details = {"random_specs": n_random, "random_null": nulls}
    return res


@_timed
def main_theorem_suite(
    smooth: bool = True, n_specs: int = 20, a_max: int = 200, Q: int = 100_000, seed: int = 0
) -> SuiteResult:
    """Factored evaluation against the direct sum.

    ``smooth``: random finitely supported specs, F = their support primes,
    truncation past the whole support, exact discrepancy 0. Otherwise q^(-2)
    with F = {2, 3} in float mode against the window bound.
    """
    res = SuiteResult("main-theorem")
    if smooth:
        rng = random.Random(seed)
        worst = Fraction(0)
        for i in range(n_specs):
            spec = random_smooth_spec(rng)
            F = spec.override_primes()
            top = finite_support(spec)[-1][0]
            for a in range(1, a_max + 1):
                r = factored_eval(spec, F, a, top, mode="exact")
                worst = max(worst, abs(r.difference))
                ok = r.difference == 0 and r.product == smooth_exact_eval(spec, a)
                res.check(ok, (spec.describe(), a, r.difference))
        res.details = {"specs": n_specs, "max_discrepancy": worst}
        return res
    spec = CoefficientSpec.power(2)
    rows = []
    for a in (1, 6, 12, 30):
        r = factored_eval(spec, {2, 3}, a, Q, mode="float")
        rows.append((a, r.discrepancy, r.tail_bound))
        res.check(r.within_bound, (a, r.discrepancy, r.tail_bound))
    res.details = {"rows": rows}
    return res


@_timed
def euler_product_suite(p_max: int = 1_000_000, Q: int = 1_000_000) -> SuiteResult:
    """Euler products and truncations against 6/pi^2 and 1/zeta(3); hybrid product is 0."""
    res = SuiteResult("euler-product")
    ref2 = six_over_pi_squared()
    ref3 = 1.0 / zeta3_partial(1_000_000)
    p2, p3 = CoefficientSpec.power(2), CoefficientSpec.power(3)
    d2 = float(direct_partial_sum(p2, 1, Q, mode="float").value)
    e2 = float(infinite_euler_product_eval(p2, 1, p_max, mode="float").value)
    d3 = float(direct_partial_sum(p3, 1, Q, mode="float").value)
    e3 = float(infinite_euler_product_eval(p3, 1, p_max, mode="float").value)
    res.check(abs(d2 - ref2) < 1e-3, ("direct s=2", d2, ref2))
    res.check(abs(e2 - ref2) < 1e-3, ("euler s=2", e2, ref2))
    res.check(abs(d3 - ref3) < 1e-6, ("direct s=3", d3, ref3))
    res.check(abs(e3 - ref3) < 1e-6, ("euler s=3", e3, ref3))
    hybrid = odd_cubes_two_ones()
    for pm in (2, 3, 10, 1000, p_max):
        for a in (1, 2, 6, 7):
            v = infinite_euler_product_eval(hybrid, a, pm).value
            res.check(v == 0 and isinstance(v, Fraction), ("hybrid", pm, a, v))
    res.details = {"6/pi^2": ref2, "direct s=2": d2, "euler s=2": e2,
                   "1/zeta(3)": ref3, "direct s=3": d3, "euler s=3": e3}
    return res


def run(suite: str, **params) -> list:
    """Run one suite, or all of them for ``suite='all'``; unknown params are ignored per suite."""
    table = {
        "holder": (holder_suite, ("max_n",)),
        "main-lemma": (main_lemma_suite, ("p_max", "a_max", "n_random", "seed")),
        "main-theorem": (main_theorem_suite, ("smooth", "n_specs", "a_max", "Q", "seed")),
        "euler-product": (euler_product_suite, ("p_max", "Q")),
    }
    names = SUITES if suite == "all" else (suite,)
    out = []
    for name in names:
        if name not in table:
            raise ValueError(f"unknown suite {name!r}; choose from {SUITES + ('all',)}")
        fn, keys = table[name]
        kw = {k: v for k, v in params.items() if k in keys and v is not None}
        out.append(fn(**kw))
    return out
