from fractions import Fraction

import pytest

from ramexp.arith import CapacityError, prime_divisors
from ramexp.coefficients import CoefficientSpec, PrimeRule, odd_cubes_two_ones
from ramexp.euler import finite_factor
from ramexp.expansions import (
    _prime_part_terms,
    abs_convergence_report,
    cofinite_partial_sum,
    coprime_split_eval,
    decade_checkpoints,
    direct_partial_sum,
    factored_eval,
    infinite_euler_product_eval,
    local_factored_eval,
    mobius_identity_check,
    nonvanishing_product_check,
    smooth_exact_eval,
    tail_majorant,
)

P1, P2, P3 = (CoefficientSpec.power(s) for s in (1, 2, 3))
TOT = CoefficientSpec.totient_reciprocal()
HYB = odd_cubes_two_ones()
Z = CoefficientSpec.zero_beyond({1: 1, 2: Fraction(1, 2), 4: Fraction(1, 4)})
DELTA = CoefficientSpec.custom([])


# direct and co-finite truncations


def test_direct_examples():
    assert direct_partial_sum(P2, 1, 4).value == Fraction(23, 36)
    assert direct_partial_sum(Z, 1, 4).value == Fraction(1, 2)
    for spec in (P1, TOT, HYB, Z):
        assert direct_partial_sum(spec, 1, 1).value == 1


def test_checkpoints_are_prefixes():
    s = direct_partial_sum(P2, 6, 1000, decade_checkpoints(1000))
    assert [q for q, _ in s.checkpoints] == [10, 100, 1000]
    assert s.at(100) == direct_partial_sum(P2, 6, 100).value


def test_cofinite_examples():
    assert cofinite_partial_sum(P2, [], 1, 50) == direct_partial_sum(P2, 1, 50).value
    assert cofinite_partial_sum(P2, {2}, 1, 4) == Fraction(8, 9)
    assert cofinite_partial_sum(P1, prime_divisors(2), 2, 3) == Fraction(2, 3)


def test_float_and_exact_agree():
    for spec in (P1, P2, TOT, HYB):
        for a in (1, 6, 7):
            e = direct_partial_sum(spec, a, 3000, mode="exact").value
            f = direct_partial_sum(spec, a, 3000, mode="float").value
            assert abs(float(e) - f) < 1e-12


def test_mode_policy():
    with pytest.raises(CapacityError):
        direct_partial_sum(P2, 1, 20_000, mode="exact")
    assert direct_partial_sum(P2, 1, 20_000).mode == "float"
    assert direct_partial_sum(P2, 1, 20_000, mode="exact", exact_threshold=20_000).mode == "exact"
    half = CoefficientSpec.power(Fraction(5, 2))
    assert direct_partial_sum(half, 1, 100).mode == "float"
    with pytest.raises(ValueError):
        direct_partial_sum(half, 1, 100, mode="exact")
    with pytest.raises(ValueError):
        direct_partial_sum(P2, 1, 100, mode="fast")


# factorization


def test_factored_examples():
    r = factored_eval(Z, {2}, 2, 4)
    assert r.difference == 0 and r.product == smooth_exact_eval(Z, 2)
    for a in (1, 2, 3, 8):
        r = factored_eval(HYB, {2}, a, 500)
        assert r.finite_factor == 0 and r.product == 0
    r = factored_eval(P2, {2, 3}, 1, 100_000)
    assert r.mode == "float" and r.within_bound
    with pytest.raises(ValueError):
        factored_eval(P2, [], 1, 10)


def test_factored_exact_bound_holds():
    for a in (1, 6, 12, 30, 64):
        r = factored_eval(P2, {2, 3}, a, 3000, mode="exact")
        assert r.discrepancy <= r.tail_bound


def test_local_examples():
    r = local_factored_eval(P2, 1, 200)
    assert r.finite_factor == 1
    assert r.cofinite_truncated == r.direct_truncated == direct_partial_sum(P2, 1, 200).value
    assert local_factored_eval(P1, 4, 100).finite_factor == Fraction(3, 2)
    r = local_factored_eval(HYB, 2, 1000)
    assert r.finite_factor == 0 and r.product == 0


def test_local_matches_factored_on_prime_support():
    for a in range(2, 201):
        loc = local_factored_eval(P2, a, 300)
        glob = factored_eval(P2, prime_divisors(a), a, 300)
        assert loc.product == glob.product


def test_prime_part_sum_is_finite_factor():
    # sum over s built from F of G(s) c_s(a) equals the product of p-factors
    for spec in (P1, P2, TOT, HYB):
        for a in (1, 2, 6, 12, 45, 360):
            for F in ([2], [2, 3], [3, 5, 7]):
                terms = _prime_part_terms(spec, F, a)
                assert sum((t for _, t in terms), Fraction(0)) == finite_factor(spec, F, a)


def test_mobius_examples():
    r = mobius_identity_check(P2, 1, 1000)
    assert r.lhs == r.rhs and r.difference == 0
    r = mobius_identity_check(P2, 2, 100_000)
    assert r.product_factor == pytest.approx(0.75) and r.within_bound
    r = mobius_identity_check(TOT, 2, 100_000)
    assert r.product_factor == 0
    lhs = [abs(mobius_identity_check(TOT, 2, Q).lhs) for Q in (100, 100_000)]
    assert lhs[1] < lhs[0]


def test_smooth_exact_examples():
    assert smooth_exact_eval(Z, 1) == Fraction(1, 2)
    assert smooth_exact_eval(Z, 2) == 1
    delta = CoefficientSpec.custom([], declared_smooth_bound=2)
    assert all(smooth_exact_eval(delta, a) == 1 for a in range(1, 30))
    with pytest.raises(ValueError):
        smooth_exact_eval(P2, 1)


# Euler products and splits


def test_euler_examples():
    r = infinite_euler_product_eval(P2, 1, 100_000)
    assert r.value == pytest.approx(0.607927, abs=1e-5)
    for pm in (2, 3, 100, 10_000):
        for a in (1, 5, 12):
            t = infinite_euler_product_eval(HYB, a, pm)
            assert t.value == 0 and t.vanishing_prime == 2
    for spec in (P1, P2, TOT):
        assert infinite_euler_product_eval(spec, 1, 2).value == 1 - spec_g2(spec)


def spec_g2(spec):
    from ramexp.coefficients import coeff_prime_power

    return coeff_prime_power(spec, 2, 1)


def test_euler_within_majorant_of_direct():
    Q = 10_000
    for spec in (P3, HYB):
        for a in range(1, 51):
            d = direct_partial_sum(spec, a, Q, mode="float").value
            e = infinite_euler_product_eval(spec, a, Q, mode="float").value
            assert abs(d - float(e)) <= tail_majorant(spec, a, Q) + 1e-12


def test_hybrid_vanishing_sits_in_the_finite_factor():
    r = factored_eval(HYB, {2}, 1, 10_000)
    assert r.finite_factor == 0
    assert abs(float(r.cofinite_truncated)) > 0.5


def test_coprime_split_examples():
    everything = coprime_split_eval(P2, lambda p: True, 1, 2000, 2000)
    assert everything.r_factor == 1
    assert everything.s_factor == direct_partial_sum(P2, 1, 2000).value
    for a in (6, 12, 30):
        r = coprime_split_eval(P2, prime_divisors(a), a, 3000, 100)
        loc = local_factored_eval(P2, a, 3000)
        assert r.s_factor == loc.finite_factor and r.r_factor == loc.cofinite_truncated
    r = coprime_split_eval(P2, {2}, 1, 10_000, 1000)
    assert abs(float(r.difference)) <= r.tail_bound


def test_abs_convergence_examples():
    # bounded for each a, but the bound depends on a: the 2-part contributes
    # sum_{K <= v+1} |c_{2^K}(a)|, which grows with v_2(a)
    totals = []
    for a in (1, 2, 4, 8, 16):
        r = abs_convergence_report(HYB, a, 10_000)
        assert r.certified and r.tail_bound < 0.1
        totals.append(r.checkpoints[-1][1] + r.tail_bound)
    assert totals == sorted(totals) and totals[-1] > 2 * totals[0]
    r = abs_convergence_report(P1, 1, 100_000)
    assert not r.certified
    inc = r.increments
    assert min(inc) > 1.0  # roughly (6/pi^2) log 10 per decade
    # the q^(-2) majorant gives floor(Q)^(-1): 0.01 at Q = 100, below 1e-3 past Q = 1000
    r = abs_convergence_report(P3, 1, 100)
    assert r.certified and r.tail_bound == pytest.approx(0.01)
    assert abs_convergence_report(P3, 1, 2000).tail_bound < 1e-3


def test_nonvanishing_examples():
    r = nonvanishing_product_check(P2, [], 100_000)
    assert r.verdict == "bounded_away_from_zero" and r.min_modulus > 0.6
    assert all(b <= a for a, b in zip(r.partial_products, r.partial_products[1:]))
    r = nonvanishing_product_check(TOT, [], 1000)
    assert r.verdict == "hypothesis_violated" and r.violating_prime == 2
    r = nonvanishing_product_check(TOT, {2}, 1000)
    assert r.verdict == "bounded_away_from_zero" and r.min_modulus > 0
