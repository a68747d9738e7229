"""Sweeping the linear-gradient potential V = 4 - 4 i eps x through its first
coalescence.

Below the critical strength all six energies are real and the winding
magnitudes are strictly ordered.  At the exceptional point modes 1 and 2 merge;
past it they carry conjugate energies, identical windings, and satisfy the
parity-conjugacy relation psi_1(x) = c * conj(psi_2(-x)), while the spectator
modes keep their order.
"""

import numpy as np

from windlab import Grid1D, PotentialSpec, SpectralProblem, winding_of
from windlab.spectral import solve_linear_spectrum
from windlab.sweep import check_pt_conjugacy, degree_of_symmetry_breaking, detect_exceptional_points

problem = SpectralProblem(PotentialSpec("LinearPT", 0.0),
                          Grid1D(-np.pi / 2, np.pi / 2, 101))

points = detect_exceptional_points(problem, 0.5, 1.1, coarse_steps=13,
                                   n_modes=4, n_grid=241)
star = points[0].epsilon_star
print(f"first coalescence: eps* = {star:.6f} (modes {points[0].mode_pair})")

import dataclasses
for eps in (0.5 * star, 1.2 * star):
    p = dataclasses.replace(problem, potential=PotentialSpec("LinearPT", eps))
    s = solve_linear_spectrum(p, 301, 4)
    w = [winding_of(q.psi.values).winding / np.pi for q in s.pairs]
    print(f"\neps = {eps:.4f}  (degree of symmetry breaking: "
          f"{degree_of_symmetry_breaking(s, 1e-6)})")
    for q, wq in zip(s.pairs, w):
        print(f"  mode {q.index}: E = {q.energy.real:+8.4f}{q.energy.imag:+.4f}i"
              f"   W = {wq:+.4f} pi")
    if eps > star:
        chk = check_pt_conjugacy(s[0].psi, s[1].psi, 1e-6)
        print(f"  pair conjugacy: c = {chk.c:.4f}, residual {chk.residual:.1e}")
