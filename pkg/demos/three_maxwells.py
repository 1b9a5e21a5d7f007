"""Maxwell's equations written three ways, checked on a point charge and a plane wave.

The residuals of dF = 0 and delta F + J = 0, of the impair route through
d(*F), and of the single Clifford equation dirac(F) = J are evaluated at a
few points away from the source.

Run: python3 demos/three_maxwells.py
"""

import numpy as np

from spacetime_em.electrodynamics import coulomb_field, maxwell_residual, plane_wave, point_charges

cases = {
    "point charge": (coulomb_field(), point_charges([1.0], [[0, 0, 0]])),
    "plane wave": (plane_wave(), None),
}
rng = np.random.default_rng(1)
for name, (field, J) in cases.items():
    print(f"{name}:")
    for _ in range(3):
        x = np.concatenate([[0.0], rng.uniform(-2, 2, size=3)])
        r = maxwell_residual(field, J, x)
        print(f"  x = {np.round(x, 2)}  |dF| = {r.homogeneous_norm:.1e}  "
              f"|delta F + J| = {r.inhomogeneous_norm:.1e}  |impair| = {r.impair_norm:.1e}  "
              f"|dirac F - J| = {r.clifford_norm:.1e}")
