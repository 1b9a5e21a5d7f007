"""A short tour of the spacetime algebra and its Hodge star.

Run: python3 demos/algebra_tour.py
"""

import numpy as np

from spacetime_em.forms import NEGATIVE, POSITIVE, PairForm, pair_hodge
from spacetime_em.kernel import G5, Multivector, gamma

print("Basis vectors square to the metric signature (+,-,-,-):")
for mu in range(4):
    print(f"  gamma_{mu}^2 = {(gamma(mu) * gamma(mu)).scalar_part:+.0f}")

print("\nThe pseudoscalar squares to -1 and anticommutes with vectors:")
print("  G5^2 =", G5 * G5)
print("  G5 g1 + g1 G5 =", G5 * gamma(1) + gamma(1) * G5)

F = gamma(0) ^ gamma(1)
print("\nThe Hodge star of an electric bivector is a magnetic one:")
print("  F      =", F)
print("  *F     =", pair_hodge(PairForm(F, 2), POSITIVE).value)
print("  *F(-t) =", pair_hodge(PairForm(F, 2), NEGATIVE).value, "(flipping the orientation negates it)")

rng = np.random.default_rng(0)
A = Multivector(rng.normal(size=16))
B = Multivector(rng.normal(size=16))
C = Multivector(rng.normal(size=16))
print("\nThe geometric product is associative: |(AB)C - A(BC)| =", ((A * B) * C - A * (B * C)).norm())
