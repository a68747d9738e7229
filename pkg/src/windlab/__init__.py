"""windlab: winding numbers of eigenfunctions in Hermitian, PT-symmetric, and
general non-Hermitian Schrodinger-type problems.

Submodules
----------
core      grids, sampled curves, potential families, contours, Hermite values
phase     unwrapping, winding numbers, nodes, interlacing, relative winding
spectral  finite-difference eigensolvers, contour transport, WKB estimates
sweep     parameter sweeps, exceptional points, PT conjugacy
bloch     lattice band structure, band-edge breaking, Bessel-series mode
nls       power-constrained nonlinear stationary states
ivp       the cosine initial-value problem and its winding regions
multidim  separable 2D fields and diagonal windings
cli       reproducible experiment runner (`windlab <experiment> ...`)
"""

from .core import (ComplexSamples, Contour, Grid1D, PotentialSpec, SpectralProblem,
                   arc_contour, bump_contour, eval_potential, hermite_complex,
                   line_contour, make_contour)
from .phase import (PhaseProfile, WindingReport, check_interlacing, find_real_nodes,
                    relative_winding, unwrap_phase, winding_number, winding_of)
from .spectral import (EigenPair, Spectrum, discretize, integrate_along_contour,
                       shifted_oscillator_eigenfunction, solve_linear_spectrum,
                       wkb_eigenfunction, wkb_eigenvalue)
from .sweep import (ExceptionalPoint, SweepResult, check_pt_conjugacy,
                    degree_of_symmetry_breaking, detect_exceptional_points,
                    track_spectrum)
from .bloch import BandPoint, band_edge_breaking, bessel_mode, bessel_series, bloch_bands
from .nls import NonlinearState, solve_stationary_state, unit_cell_power
from .ivp import (Trajectory, WindingMap, classify_region, count_extrema,
                  integrate_cosine_ivp, ivp_winding, make_pair, pairing_offset,
                  shifted_family)
from .multidim import Field2D, diagonal_winding, phase_field, separable_field

__version__ = "0.1.0"
