"""Orientation is a convention: flipping it together with the charge changes nothing observable.

A charge gyrates in a uniform magnetic field. Reversing the orientation
negates both the charge density (a pair form) and the field strength, and
the trajectory is identical. The impair charge integral does not care about
the chart orientation at all.

Run: python3 demos/orientation_flip.py
"""

import numpy as np

from spacetime_em.electrodynamics import uniform_field
from spacetime_em.mechanics import ChargedParticle, orientation_flip_experiment

particle = ChargedParticle.from_state(1.0, 1.0, momentum=[1.0, 0.0, 0.0])
report = orientation_flip_experiment(particle, uniform_field(B=[0, 0, 1]), 2 * np.pi, 2 * np.pi / 2000)

print("largest trajectory difference after the flip:", report.max_deviation)
print(f"pair charge integral:   {report.charge_pair:+.6f} -> {report.charge_pair_flipped:+.6f}")
print(f"impair charge integral: {report.charge_impair:+.6f} -> {report.charge_impair_flipped:+.6f}")
r = np.linalg.norm(report.original.x[:, 1:] - [0, -1, 0], axis=1)
print(f"gyroradius over one period: {r.min():.9f} .. {r.max():.9f} (expected p/qB = 1)")
