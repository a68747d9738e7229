"""Winding regions of y' = cos(pi x y) over complex initial values.

A real initial value gives a real oscillatory solution; perturbed off the
axis, the derivative curve cos(pi x y) winds about zero an odd number of
half-turns.  Initial-value space splits into regions of constant winding
(pi, 3 pi, 5 pi, ...) separated by separatrix curves, mirrored with opposite
sign below the axis.
"""

import numpy as np

from windlab.ivp import classify_region, count_extrema, integrate_cosine_ivp, ivp_winding

print("single trajectories:")
for a in (0.5 + 0.25j, 2.5 + 0.25j, 2.5 + 0.05j, 0.5 - 0.25j):
    w = ivp_winding(integrate_cosine_ivp(a)).winding
    print(f"  a = {a}: winding {w / np.pi:+.4f} pi")

print("\nreal solutions show the flattened signature (extrema count = |W|/pi):")
for a0 in (0.5, 2.2, 2.7):
    traj = integrate_cosine_ivp(a0)
    print(f"  a = {a0}: {count_extrema(traj)} interior extrema")

print("\ncoarse region map (rows Re a = 0..2.9, columns Im a = -0.6..0.6):")
m = classify_region((0.0, 2.9), (-0.6, 0.6), 12, 7, x_max=20.0)
for i, re in enumerate(m.re_values):
    print(f"  Re {re:4.2f}: ", "  ".join(f"{c:>7}" for c in m.classes[i]))
