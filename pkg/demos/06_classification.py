"""
Placing coefficients in the trichotomy
======================================

C1: no prime with G(p) = 1. C2: some prime with G(p^K) = 1 for all K.
C3: the rest. Only C2 gives a certain answer; C1 and C3 hinge on Mobius
series that converge too slowly to certify a zero.
"""

from ramexp import (
    CoefficientSpec,
    absolute_convergence_exclusion,
    classify,
    fact2_transfer_check,
    odd_cubes_two_ones,
)

specs = {
    "1/q": CoefficientSpec.power(1),
    "1/q^3": CoefficientSpec.power(3),
    "1/phi(q)": CoefficientSpec.totient_reciprocal(),
    "odd cubes, 1 on powers of 2": odd_cubes_two_ones(),
}
for name, spec in specs.items():
    c = classify(spec)
    print(f"{name:28s} {c.case}  {c.verdict:11s} {c.membership}")
    for line in c.caveats:
        print("    caveat:", line)
    if c.conditional_note:
        print("    note:", c.conditional_note)

# with F(G) empty, removing the primes of d rescales the Mobius series by a non-zero factor
for row in fact2_transfer_check(CoefficientSpec.power(2), [2, 6, 30], 100_000).rows:
    print(f"d={row.d:2d}: ratio {row.ratio:.8f}, expected {row.expected_ratio:.8f}")

for name, spec in specs.items():
    e = absolute_convergence_exclusion(spec)
    print(f"{name:28s} {e.status}: {e.reason}")
