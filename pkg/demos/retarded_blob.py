"""Fields of a charged Gaussian cloud from retarded potentials.

At rest the far field is Coulomb's; in uniform motion it matches the
Lorentz-boosted Coulomb field, magnetic part included.

Run: python3 demos/retarded_blob.py   (takes a few seconds)
"""

import numpy as np

from spacetime_em.electrodynamics import (
    boosted_coulomb_field, coulomb_field, gaussian_blob, retarded_field, split_F,
)

x = np.array([0.0, 5.0, 0.0, 0.0])
static = retarded_field(gaussian_blob(1.0, 1.0), x)
print("blob at rest, E at", x[1:], ":", split_F(static)[0], " Coulomb:", split_F(coulomb_field()(x))[0])

v = [0.0, 0.0, 0.5]
moving = retarded_field(gaussian_blob(1.0, 1.0, velocity=v), x)
ref = boosted_coulomb_field(1.0, v)(x)
E, B = split_F(moving)
print("blob moving along z at c/2:")
print("  E =", E, " B =", B)
print(f"  relative difference from the boosted Coulomb field: {(moving - ref).norm() / ref.norm():.1e}")
