"""Band structure of the PT-symmetric lattice 4cos^2(x) + 4i*eps*sin(2x),
band-edge symmetry breaking, and the exact Bessel-series mode.

The lattice period is pi (the period of cos^2 x and sin 2x), so the reduced
zone is -1 <= k < 1.  Bands are computed in a plane-wave basis exp(i(k+2j)x),
which is exponentially accurate and exactly periodic; the finite-difference
solver is retained as a cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gamma, isnan

import numpy as np

from .core import ComplexSamples, Grid1D
from .errors import AliasingSuspected, ConvergenceFailure, NodeEncountered, SeriesDivergence
from .phase import winding_of

PERIOD = np.pi

#: |argument| cap for the ascending Bessel series at double precision
BESSEL_ARG_CAP = 30.0


@dataclass(frozen=True)
class BandPoint:
    """One band at one Bloch wavenumber.

    winding is the signed winding of the full Bloch function u(x) e^{ikx} over
    one closed period [0, pi]; the periodic part u is sampled on the same grid.
    """

    k: float
    band_index: int
    energy: complex
    u: ComplexSamples
    winding: float


def _plane_wave_matrix(epsilon: float, k: float, n_waves: int) -> np.ndarray:
    if n_waves < 8:
        raise ValueError("need at least 8 plane-wave components")
    J = n_waves // 2
    js = np.arange(-J, J + 1)
    H = np.diag((k + 2.0 * js) ** 2 + 2.0 + 0j)
    for i in range(js.size - 1):
        H[i + 1, i] = 1.0 + 2.0 * epsilon  # exp(+2ix) Fourier component
        H[i, i + 1] = 1.0 - 2.0 * epsilon  # exp(-2ix)
    return H


def bloch_bands(epsilon: float, k: float, n_modes: int, n_waves: int = 25,
                n_samples: int = 513):
    """Lowest bands at one (epsilon, k), as BandPoint records.

    Eigenpairs of the plane-wave matrix are sorted by Re E (ties by Im E); the
    Bloch function is reconstructed on a closed period grid [0, pi] with
    n_samples points.
    """
    H = _plane_wave_matrix(epsilon, k, n_waves)
    if n_modes > H.shape[0]:
        raise ConvergenceFailure("more modes requested than basis size")
    w, c = np.linalg.eig(H)
    order = np.lexsort((w.imag, w.real))
    w, c = w[order], c[:, order]
    J = n_waves // 2
    js = np.arange(-J, J + 1)
    grid = Grid1D(0.0, PERIOD, n_samples)
    x = grid.points()
    basis = np.exp(2j * np.outer(js, x))
    points = []
    for m in range(n_modes):
        u = c[:, m] @ basis
        norm = np.sqrt(grid.h * np.sum(np.abs(u) ** 2))
        u = u / norm
        j0 = int(np.argmax(np.abs(u)))
        u = u * (np.abs(u[j0]) / u[j0])
        psi = u * np.exp(1j * k * x)
        try:
            W = winding_of(psi).winding
        except (NodeEncountered, AliasingSuspected):
            W = float("nan")  # real or degenerate states carry genuine nodes
        points.append(BandPoint(k=float(k), band_index=m + 1, energy=complex(w[m]),
                                u=ComplexSamples(grid, u), winding=float(W)))
    return points


def band_edge_breaking(eps_min: float, eps_max: float, k_edge: float = 1.0,
                       scan_points: int = 120, n_modes: int = 6, n_waves: int = 25,
                       im_tol: float = 1e-8, refine_tol: float = 1e-4):
    """Smallest strength at which any band-edge energy acquires an imaginary part.

    Scans scan_points values of the strength, then bisects the first onset down
    to refine_tol.  Returns None when no breaking occurs in the range.
    """
    if scan_points < 100:
        raise ValueError("scan resolution must be at least 100 points")

    def broken(e):
        w = np.linalg.eigvals(_plane_wave_matrix(e, k_edge, n_waves))
        w = w[np.lexsort((w.imag, w.real))][:n_modes]
        return bool(np.abs(w.imag).max() > im_tol)

    eps = np.linspace(eps_min, eps_max, scan_points)
    flags = [broken(e) for e in eps]
    if not any(flags):
        return None
    i = flags.index(True)
    if i == 0:
        return float(eps[0])
    lo, hi = eps[i - 1], eps[i]
    while hi - lo > refine_tol:
        mid = 0.5 * (lo + hi)
        if broken(mid):
            hi = mid
        else:
            lo = mid
    return float(0.5 * (lo + hi))


def bessel_series(order: float, z, rel_tol: float = 1e-16, max_terms: int = 400):
    """Bessel function of (possibly non-integer) real order at complex argument,
    by the ascending power series with gamma-function coefficients, truncated
    at relative term size rel_tol.

    Negative integer orders use J_{-m}(z) = (-1)^m J_m(z).
    """
    z = np.asarray(z, dtype=complex)
    scalar = z.ndim == 0
    z = np.atleast_1d(z)
    if np.abs(z).max() > BESSEL_ARG_CAP:
        raise SeriesDivergence(
            f"|z| = {np.abs(z).max():.3g} exceeds series guard {BESSEL_ARG_CAP}")
    sign = 1.0
    if order < 0 and float(order).is_integer():
        sign = (-1.0) ** int(-order)
        order = -order
    half = z / 2.0
    # leading factor (z/2)^order / Gamma(order + 1), principal branch
    g = gamma(order + 1.0)
    if isnan(g):  # pragma: no cover - order+1 at a gamma pole
        raise SeriesDivergence(f"gamma pole at order {order}")
    with np.errstate(invalid="ignore", divide="ignore"):
        lead = np.where(half == 0, 1.0 if order == 0 else 0.0,
                        half.astype(complex) ** order) / g
    term = np.ones_like(z)
    total = term.copy()
    m = 0
    while m < max_terms:
        m += 1
        term = term * (-(half * half)) / (m * (m + order))
        total = total + term
        if np.max(np.abs(term)) <= rel_tol * max(np.max(np.abs(total)), 1e-300):
            break
    else:
        raise SeriesDivergence("series did not reach the truncation tolerance")
    out = sign * lead * total
    return complex(out[0]) if scalar else out


def bessel_mode(k: float, epsilon: float, grid: Grid1D) -> ComplexSamples:
    """The exact lattice mode J_k(i sqrt(eps/2) e^{ix}) sampled on a grid,
    unit-normalized.  Exact for the lattice at eps = 1/2; evaluable elsewhere."""
    x = grid.points()
    z = 1j * np.sqrt(epsilon / 2.0) * np.exp(1j * x)
    u = bessel_series(k, z)
    norm = np.sqrt(grid.h * np.sum(np.abs(u) ** 2))
    return ComplexSamples(grid, u / norm)
