"""
Ramanujan sums three ways
=========================

c_q(a) from the gcd formula, from the prime-power cases, and from the
defining sum of roots of unity.
"""

from ramexp import c_batch, c_definition_oracle, c_holder, c_prime_power

# a = 1 gives the Mobius function
print("c_q(1), q = 1..12:", c_batch(1, 12).tolist())

# a = 4: the row is periodic in gcd(q, 4)
print("c_q(4), q = 1..12:", c_batch(4, 12).tolist())

# prime powers follow three cases: phi(p^K) while p^K | a, then -p^v, then 0
for K in range(6):
    print(f"c_(2^{K})(4) =", c_prime_power(2, K, 4))

# the floating-point oracle agrees with the gcd formula
for q, a in [(4, 2), (9, 3), (30, 12), (360, 84)]:
    print(f"q={q:4d} a={a:3d}  formula {c_holder(q, a):5d}  oracle {c_definition_oracle(q, a):5d}")
