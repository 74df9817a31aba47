"""
Finite factor times co-finite factor
====================================

For a prime set F, the expansion splits into a product over p in F and a
series over r coprime to F. At a truncation Q the two sides differ only by
pairs s*r > Q, and that window is bounded with |c_r(a)| <= phi(r).
"""

import random

from ramexp import CoefficientSpec, factored_eval, local_factored_eval, smooth_exact_eval
from ramexp.verify import random_smooth_spec

spec = CoefficientSpec.power(2)
print(" a   direct(1e5)        finite*cofinite    |difference|   window bound")
for a in (1, 6, 12, 30):
    r = factored_eval(spec, {2, 3}, a, 100_000, mode="float")
    print(f"{a:2d}  {r.direct_truncated: .15f}  {r.product: .15f}  {r.discrepancy:.2e}      {r.tail_bound:.2e}")

# local form: F = primes dividing a
r = local_factored_eval(spec, 12, 5000, mode="exact")
print("local, a = 12: finite factor", r.finite_factor, " exact difference is",
      "0" if r.difference == 0 else f"{float(r.difference):.3e}")

# finitely supported G: once Q covers the support the identity is exact
smooth = random_smooth_spec(random.Random(1))
print(smooth.describe())
for a in (1, 2, 6, 30):
    print(f"a={a:2d}  whole expansion = {smooth_exact_eval(smooth, a)}")
