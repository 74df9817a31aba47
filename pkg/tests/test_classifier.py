from fractions import Fraction

import pytest

from ramexp.classifier import (
    CONDITIONAL_NOTE,
    absolute_convergence_exclusion,
    classify,
    fact2_transfer_check,
)
from ramexp.coefficients import CoefficientSpec, PrimeRule, odd_cubes_two_ones
from ramexp.expansions import direct_partial_sum, tail_majorant

P1, P2, P3 = (CoefficientSpec.power(s) for s in (1, 2, 3))
TOT = CoefficientSpec.totient_reciprocal()
HYB = odd_cubes_two_ones()


def test_power_one_is_c1_uncertified():
    c = classify(P1)
    assert c.case == "C1" and c.fixed_points.F_of_G == frozenset()
    assert c.verdict == "uncertified"
    assert [r.Q for r in c.evidence] == [10, 100, 1000, 10_000, 100_000]
    assert any("consistent with in-cloud, not certified" in x for x in c.caveats)
    assert c.conditional_note is None and c.assumptions


def test_hybrid_is_c2_in_cloud():
    c = classify(HYB)
    assert (c.case, c.membership, c.verdict) == ("C2", "in_cloud_certain", "in")
    assert c.fixed_points.F0_of_G == {2}


def test_totient_is_c3_conditional():
    c = classify(TOT)
    assert c.case == "C3" and c.fixed_points.F_of_G == {2}
    assert c.conditional_note == CONDITIONAL_NOTE
    assert c.verdict == "uncertified"
    labels = {r.description for r in c.evidence}
    assert any("c_q(6)" in x for x in labels) and any("G(r) mu(r)" in x for x in labels)


def test_power_three_is_out():
    c = classify(P3)
    assert (c.case, c.verdict, c.membership) == ("C1", "out", "not_in_cloud")
    assert float(c.evidence[-1].value) == pytest.approx(0.8319073726, abs=1e-9)


def test_trichotomy_is_total():
    specs = [
        P1, P2, P3, TOT, HYB,
        CoefficientSpec.power(2, [PrimeRule.explicit(3, [1, Fraction(1, 2)])]),
        CoefficientSpec.power(2, [PrimeRule.all_ones(5), PrimeRule.all_ones(7)]),
        CoefficientSpec.custom([PrimeRule.explicit(2, [1, 1, 1], "zero")]),
    ]
    for spec in specs:
        c = classify(spec, Q=1000)
        assert c.case in ("C1", "C2", "C3")
        assert (c.case == "C2") == bool(c.fixed_points.F0_of_G)
        assert (c.case == "C1") == (not c.fixed_points.F_of_G)
        assert c.verdict in ("in", "out", "uncertified")


def test_bounded_scan_caveat():
    # G(3^K) = 1 on every scanned K, but a black-box rule cannot promise it beyond k_max
    spec = CoefficientSpec.power(2, [PrimeRule.function(3, lambda K: 1)])
    c = classify(spec, k_max=8, Q=1000)
    assert c.case == "C2" and not c.fixed_points.exhaustive
    assert (c.membership, c.verdict) == ("undetermined", "uncertified")
    assert any("bounded scan" in x for x in c.caveats)
    # a rule with G(3) != 1 is settled at K = 1 and stays exhaustive
    c = classify(CoefficientSpec.power(2, [PrimeRule.function(3, lambda K: Fraction(1, 2))]), Q=1000)
    assert c.fixed_points.exhaustive and c.case == "C1"


def test_c2_partial_sums_within_tail_of_zero():
    for a in range(1, 51):
        d = direct_partial_sum(HYB, a, 20_000, mode="float").value
        assert abs(d) <= tail_majorant(HYB, a, 20_000)


def test_fact2_examples():
    r = fact2_transfer_check(P2, [1, 6], 100_000)
    d1, d6 = r.rows
    assert d1.identity.difference == 0 and d1.ratio == 1.0
    assert d6.expected_ratio == pytest.approx(1 / ((1 - 1 / 4) * (1 - 1 / 9)))
    assert d6.ratio == pytest.approx(d6.expected_ratio, rel=1e-6)
    assert r.all_within_bound
    r = fact2_transfer_check(P1, [2], 1_000_000)
    row = r.rows[0]
    assert abs(row.identity.lhs) < 1e-3 and abs(row.identity.rhs) < 1e-3
    with pytest.raises(ValueError):
        fact2_transfer_check(TOT, [2], 100)


def test_exclusion_examples():
    e = absolute_convergence_exclusion(P3)
    assert e.status == "excluded" and e.product_report.min_modulus > 0.83
    assert absolute_convergence_exclusion(P1).status == "no_exclusion"
    assert absolute_convergence_exclusion(HYB).status == "not_applicable"
    assert absolute_convergence_exclusion(TOT).status == "no_exclusion"
