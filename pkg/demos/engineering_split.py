"""From one spacetime equation to the four vector equations of electrical engineering.

Multiplying dirac(F) - J by gamma_0 and splitting by grade gives Gauss,
Ampere, Faraday and the no-monopole law. Choosing -i instead of i for the
spatial pseudoscalar reverses the sense of circulation around a wire but not
the force on a moving charge.

Run: python3 demos/engineering_split.py
"""

from spacetime_em.electrodynamics import plane_wave
from spacetime_em.pauli import flip_spatial_orientation, pauli_graded_components

s, amp, far, mono = pauli_graded_components(plane_wave(), None, [0.3, 0.1, 0.2, 0.4])
print("plane wave, graded residuals:")
print(f"  Gauss {s:.1e}  Ampere {abs(amp).max():.1e}  Faraday {abs(far).max():.1e}  monopole {mono:.1e}")

report = flip_spatial_orientation()
print("\nstraight wire, i versus -i:")
print("  circulation of B:", [round(c, 6) for c in report.circulation])
print("  force on the test charge:", [[round(f, 6) for f in force] for force in report.force])
