"""
Euler products against zeta values
==================================

For G(q) = q^(-s) and a = 1 the expansion is sum mu(q) q^(-s) = 1/zeta(s).
Both the truncated series and the product over primes approach it.
"""

from ramexp import CoefficientSpec, direct_partial_sum, infinite_euler_product_eval
from ramexp.references import six_over_pi_squared, zeta3_partial

ref = {2: six_over_pi_squared(), 3: 1 / zeta3_partial()}
for s in (2, 3):
    spec = CoefficientSpec.power(s)
    d = direct_partial_sum(spec, 1, 1_000_000, checkpoints=[10, 100, 1000, 10_000, 100_000], mode="float")
    e = infinite_euler_product_eval(spec, 1, 1_000_000, mode="float")
    print(f"s = {s}, reference {ref[s]:.12f}")
    for Q, v in d.checkpoints:
        print(f"   direct Q={Q:>8d}: {v:.12f}")
    print(f"   product over {len(e.primes)} primes: {float(e.value):.12f}")

# partial products for s = 2 decrease monotonically
e = infinite_euler_product_eval(CoefficientSpec.power(2), 1, 50, mode="float")
print("running products:", [round(float(x), 5) for x in e.partial_products])
