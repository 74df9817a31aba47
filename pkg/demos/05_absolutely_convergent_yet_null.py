"""
An absolutely convergent expansion of zero
==========================================

G(q) = 1/q^3 on odd q and G(2^K) = 1 for all K. The 2-factor vanishes for
every a, so every expansion sums to 0, although sum |G(q) c_q(a)| is finite
for each a.
"""

from ramexp import (
    abs_convergence_report,
    direct_partial_sum,
    factored_eval,
    infinite_euler_product_eval,
    odd_cubes_two_ones,
    tail_majorant,
)

G = odd_cubes_two_ones()
for a in (1, 2, 6, 7, 48):
    d = direct_partial_sum(G, a, 100_000, mode="float")
    print(f"a={a:3d}  sum_(q<=1e5) = {d.value: .3e}   certified tail {tail_majorant(G, a, 100_000):.1e}")

print("Euler product, a = 5, p <= 1e4:", infinite_euler_product_eval(G, 5, 10_000).value)

# absolute sums are finite but their size depends on a
for a in (1, 2, 4, 8):
    r = abs_convergence_report(G, a, 10_000)
    print(f"a={a}: sum |G c| up to 1e4 = {r.checkpoints[-1][1]:.4f} (+ tail <= {r.tail_bound:.1e})")

# the zero sits in the finite factor; the odd part is far from zero
r = factored_eval(G, {2}, 1, 10_000)
print("finite factor", r.finite_factor, " odd co-finite part", float(r.cofinite_truncated))
