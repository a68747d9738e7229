"""Power-constrained nonlinear stationary states on the gain-loss lattice.

Each state continues from a linear band seed at fixed unit-cell power.  As the
gain-loss strength rises, the two lowest states collide and continue as a
conjugate pair -- same winding, mirrored energies -- while the third keeps a
real eigenvalue throughout.
"""

import numpy as np

from windlab.bloch import bloch_bands
from windlab.nls import solve_stationary_state
from windlab.phase import winding_of
from windlab.sweep import check_pt_conjugacy

K, P = 0.9, 0.3
print(f"cubic lattice states at k = {K}, unit-cell power {P}")
for eps in (0.25, 0.5, 0.6, 1.0):
    bands = bloch_bands(eps, K, 3)
    states = [solve_stationary_state(eps, K, 1, P, bands[m], n=160) for m in range(3)]
    row = "  ".join(f"E{m + 1} = {s.energy.real:+.4f}{s.energy.imag:+.3f}i"
                    for m, s in enumerate(states))
    print(f"eps = {eps:4.2f}:  {row}")
    if eps == 1.0:
        chk = check_pt_conjugacy(states[0].psi, states[1].psi, 1e-4)
        w1 = winding_of(states[0].psi.values).winding
        w2 = winding_of(states[1].psi.values).winding
        print(f"  pair conjugacy residual {chk.residual:.1e}; "
              f"windings {w1 / np.pi:.3f} pi and {w2 / np.pi:.3f} pi")
