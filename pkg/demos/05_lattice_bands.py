"""Band structure of the balanced-gain-loss lattice 4 cos^2 x + 4 i eps sin 2x.

Inside the zone the periodic parts of folded band pairs wind oppositely
(+-2 pi, +-4 pi, ...); every band's full Bloch winding is congruent to k*pi
modulo 2 pi, so winding changes can only jump.  At eps = 1/2 all band edges
turn complex at once, and there the k = 1 mode is a Bessel-type series whose
winding over one cell is exactly pi.
"""

import numpy as np

from windlab import Grid1D, winding_of
from windlab.bloch import band_edge_breaking, bessel_mode, bloch_bands

print("bands at k = 0.5, eps = 0.25:")
for p in bloch_bands(0.25, 0.5, 6):
    wu = winding_of(p.u.values).winding
    print(f"  band {p.band_index}: E = {p.energy.real:8.4f}  "
          f"W[u] = {wu / np.pi:+.3f} pi   W[psi] = {p.winding / np.pi:+.3f} pi")

star = band_edge_breaking(0.05, 0.8, refine_tol=1e-4)
print(f"\nband-edge symmetry breaking at eps = {star:.4f}")

u = bessel_mode(1.0, 0.5, Grid1D(0.0, np.pi, 2001))
print(f"series mode at (k=1, eps=1/2): winding {winding_of(u.values).winding / np.pi:.6f} pi")
