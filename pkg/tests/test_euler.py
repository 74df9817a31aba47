import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from ramexp.coefficients import CoefficientSpec, PrimeRule, coeff_prime_power, odd_cubes_two_ones
from ramexp.euler import (
    finite_factor,
    p_factor,
    p_factor_is_null,
    p_factor_phi_form,
    p_factor_series,
    solve_next_prime_power,
)

P1 = CoefficientSpec.power(1)


def test_factor_examples():
    assert p_factor(P1, 2, 4).value == Fraction(3, 2)
    assert p_factor_phi_form(P1, 2, 4).value == Fraction(3, 2)
    spec = CoefficientSpec.power(3)
    assert p_factor(spec, 5, 3).value == 1 - Fraction(1, 125)
    ones = CoefficientSpec.power(2, [PrimeRule.all_ones(2)])
    for a in range(1, 50):
        assert p_factor(ones, 2, a).value == 0
    assert p_factor_phi_form(ones, 7, 3).value == 1 - Fraction(1, 49)
    assert p_factor_phi_form(ones, 7, 49).value == Fraction(48, 49) * Fraction(57, 49)


def test_null_verdicts():
    assert p_factor_is_null(odd_cubes_two_ones(), 2, 6).kind == "null_exhaustive"
    v = p_factor_is_null(CoefficientSpec.power(3), 2, 6)
    assert (v.kind, v.witness, v.factor) == ("not_null", 1, Fraction(7, 8))
    v = p_factor_is_null(CoefficientSpec.totient_reciprocal(), 2, 6)
    assert (v.kind, v.witness, v.factor) == ("not_null", 2, 1)
    ladder = CoefficientSpec.custom([PrimeRule.explicit(3, [1] * 5, "zero")])
    assert p_factor_is_null(ladder, 3, 4).kind == "null_up_to_bound"
    assert p_factor_is_null(ladder, 3, 5).kind == "not_null"
    with pytest.raises(ValueError):
        p_factor_is_null(P1, 2, 0)


@settings(max_examples=200, deadline=None)
@given(
    st.sampled_from([2, 3, 5, 7, 11, 13]),
    st.lists(st.fractions(max_denominator=50, min_value=-5, max_value=5), min_size=1, max_size=6),
    st.sampled_from(["zero", "family"]),
    st.integers(1, 5000),
)
def test_closed_forms_agree(p, values, tail, a):
    spec = CoefficientSpec.power(2, [PrimeRule.explicit(p, values, tail)])
    t = p_factor(spec, p, a).value
    assert t == p_factor_phi_form(spec, p, a).value == p_factor_series(spec, p, a)


def test_factor_recovers_ladder():
    rng = random.Random(3)
    for _ in range(50):
        p = rng.choice([2, 3, 5])
        values = [Fraction(rng.randint(-5, 5), rng.randint(1, 6)) for _ in range(6)]
        spec = CoefficientSpec.custom([PrimeRule.explicit(p, values, "zero")])
        for v in range(6):
            assert solve_next_prime_power(spec, p, v) == coeff_prime_power(spec, p, v + 1)


def test_finite_factor():
    spec = CoefficientSpec.power(2)
    assert finite_factor(spec, [], 12) == 1
    assert finite_factor(spec, [2, 3], 12) == p_factor(spec, 2, 12).value * p_factor(spec, 3, 12).value
    assert finite_factor(odd_cubes_two_ones(), [2, 3], 5) == 0
