"""Separable 2D fields: phase maps and the corner-to-corner winding.

For tensor-product eigenfunctions the diagonal winding is the sum of the two
1D factor windings, so the total is set by the index sum; the phase map of an
oscillator state (a1, a2) shows a1 vertical and a2 horizontal jump lines.
"""

import numpy as np

from windlab import Grid1D
from windlab.multidim import count_phase_jumps, diagonal_winding, separable_field

well = Grid1D(0.0, np.pi, 401)
f = separable_field("SquareWell", (3, 2), (well, well), (-1.0, -1.0))
print(f"box field (3,2) at full perturbation: diagonal winding "
      f"{diagonal_winding(f) / np.pi:.6f} pi  (= 3 + 2)")

osc = Grid1D(-8.0, 8.0, 1201)
print("\noscillator diagonals (shift -0.05), ordered by index sum:")
for pair in ((0, 0), (1, 0), (1, 1), (2, 1), (2, 2)):
    w = diagonal_winding(separable_field("HarmonicOscillator", pair, (osc, osc),
                                         (-0.05, -0.05)))
    print(f"  {pair}: {w / np.pi:+.3f} pi")

g = separable_field("HarmonicOscillator", (2, 1), (osc, osc), (0.001, 0.001))
print("\nphase-jump structure of (2,1):",
      count_phase_jumps(g, axis=0, position=-2.0), "vertical lines,",
      count_phase_jumps(g, axis=1, position=-2.0), "horizontal line")
