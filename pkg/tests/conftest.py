"""Shared problem factories and frozen reference constants."""

import numpy as np
import pytest

from windlab.core import Grid1D, PotentialSpec, SpectralProblem

# First coalescence of the linear-gradient potential on [-pi/2, pi/2], located
# by a dense strength scan of the finite-difference spectrum (401 interior
# points) refined by bisection on the conjugate-splitting predicate.  Frozen
# before the build as the regression constant for exceptional-point detection.
LINEAR_PT_FIRST_EP = 0.7941765


def square_well(n_domain=101):
    return SpectralProblem(PotentialSpec("SquareWell"), Grid1D(0.0, np.pi, n_domain))


def linear_pt(eps):
    return SpectralProblem(PotentialSpec("LinearPT", eps),
                           Grid1D(-np.pi / 2, np.pi / 2, 101))


def shifted_ho(eps, half_width=10.0):
    return SpectralProblem(PotentialSpec("ShiftedHO", eps),
                           Grid1D(-half_width, half_width, 101))


def cubic_pt(half_width=1.0):
    return SpectralProblem(PotentialSpec("CubicPT", 1.0),
                           Grid1D(-half_width, half_width, 101))


def x_sin_x(eps):
    return SpectralProblem(PotentialSpec("XSinX", eps),
                           Grid1D(-np.pi / 2, np.pi / 2, 101))


@pytest.fixture(scope="session")
def cubic_fd_energies():
    """Finite-difference eigenvalues of the imaginary cubic potential for modes
    15..25, each solved at fixed points-per-wavelength (48 n - 1 interior
    points) so the discretization floor is mode-independent."""
    from windlab.spectral import eigenvalues_only

    out = {}
    for n in range(15, 26):
        w = eigenvalues_only(cubic_pt(), 48 * n - 1, n)
        out[n] = complex(w[n - 1])
    return out
