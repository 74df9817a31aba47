"""
p-Euler factors and when they vanish
====================================

The K-series sum_K G(p^K) c_{p^K}(a) stops at K = v_p(a) + 1 and has two
closed forms. It vanishes for every a exactly when G(p^K) = 1 for all K.
"""

from fractions import Fraction

from ramexp import CoefficientSpec, PrimeRule, p_factor, p_factor_is_null, p_factor_phi_form, p_factor_series

spec = CoefficientSpec.power(1)  # G(q) = 1/q
for a in (1, 2, 4, 12):
    t, f, s = p_factor(spec, 2, a).value, p_factor_phi_form(spec, 2, a).value, p_factor_series(spec, 2, a)
    print(f"a={a:3d}: telescoped {t}, totient form {f}, K-series {s}")

# a coefficient equal to 1 on every power of 2 kills the 2-factor
ones = CoefficientSpec.power(3, [PrimeRule.all_ones(2)])
print("2-factor for a = 1..8:", [str(p_factor(ones, 2, a).value) for a in range(1, 9)])
print(p_factor_is_null(ones, 2, 6))

# one wrong rung on the ladder is caught by the smallest witness a = p^v
ladder = CoefficientSpec.custom([PrimeRule.explicit(3, [1, 1, Fraction(1, 2), 1], "zero")])
print(p_factor_is_null(ladder, 3, 6))
