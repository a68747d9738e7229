"""Phase unwrapping, winding numbers, node detection, and interlacing checks.

Winding is SIGNED and measured in radians: W = theta(end) - theta(start) of the
unwrapped phase.  It is computed as the telescoped sum of principal increments
of arg, which is exact on helical data and introduces no quadrature error.
Where the source material quotes only magnitudes, comparisons use |W|.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import ComplexSamples
from .errors import AliasingSuspected, NodeEncountered

#: default node tolerance, relative to the curve's maximum magnitude
NODE_TOL_REL = 1e-10

#: default per-step phase bound; pi/2 leaves a 2x margin against silent 2*pi slips
MAX_STEP_DEFAULT = np.pi / 2


@dataclass(frozen=True)
class PhaseProfile:
    """Unwrapped phase and magnitude samples of a complex curve."""

    grid: object
    theta: np.ndarray
    magnitude: np.ndarray


@dataclass(frozen=True)
class WindingReport:
    """Signed winding in radians plus node/aliasing diagnostics."""

    winding: float
    min_magnitude: float
    aliasing_margin: float


def _increments(values: np.ndarray) -> np.ndarray:
    # principal increment in (-pi, pi]; product form avoids overflow of ratios
    return np.angle(values[1:] * np.conj(values[:-1]))


def unwrap_phase(psi, node_tol: float | None = None, max_step: float = MAX_STEP_DEFAULT) -> PhaseProfile:
    """Unwrap the phase of a sampled complex curve.

    theta[0] is the principal argument of the first sample; each subsequent
    value adds the principal increment in (-pi, pi].

    Parameters
    ----------
    psi : ComplexSamples or array_like
    node_tol : float, optional
        Absolute magnitude below which a sample counts as a node.  Default is
        NODE_TOL_REL times the maximum magnitude.
    max_step : float
        Largest tolerated per-step increment, in radians.  Must stay below pi;
        increments beyond it raise AliasingSuspected (the caller should refine
        the grid, or knowingly relax the bound and inspect aliasing_margin).
    """
    if isinstance(psi, ComplexSamples):
        grid, values = psi.grid, psi.values
    else:
        values = np.asarray(psi, dtype=complex)
        grid = None
    if not 0 < max_step < np.pi:
        raise ValueError("max_step must lie in (0, pi)")
    mag = np.abs(values)
    if mag.max() == 0.0:
        raise NodeEncountered(0, "curve is identically zero")
    if node_tol is None:
        node_tol = NODE_TOL_REL * mag.max()
    if node_tol <= 0:
        raise ValueError("node_tol must be positive")
    small = np.nonzero(mag < node_tol)[0]
    if small.size:
        raise NodeEncountered(int(small[0]))
    inc = _increments(values)
    big = np.nonzero(np.abs(inc) > max_step)[0]
    if big.size:
        j = int(big[0])
        raise AliasingSuspected(j, float(abs(inc[j])))
    theta = np.concatenate([[np.angle(values[0])], np.angle(values[0]) + np.cumsum(inc)])
    return PhaseProfile(grid=grid, theta=theta, magnitude=mag)


def winding_number(profile: PhaseProfile) -> WindingReport:
    """Total signed phase change of an unwrapped profile, in radians."""
    steps = np.abs(np.diff(profile.theta))
    return WindingReport(
        winding=float(profile.theta[-1] - profile.theta[0]),
        min_magnitude=float(profile.magnitude.min()),
        aliasing_margin=float(steps.max()) if steps.size else 0.0,
    )


def winding_of(psi, node_tol: float | None = None, max_step: float = MAX_STEP_DEFAULT) -> WindingReport:
    """Convenience: unwrap_phase followed by winding_number."""
    return winding_number(unwrap_phase(psi, node_tol=node_tol, max_step=max_step))


def find_real_nodes(psi, x=None, tol: float = 0.0):
    """Interior sign-change locations of a real-sampled function.

    Crossings are located by linear interpolation; samples with |value| <= tol
    count as exact zeros (runs of them collapse to their midpoint).  Boundary
    points are not nodes.

    Parameters
    ----------
    psi : ComplexSamples with real values, or real array
    x : array_like, optional
        Abscissae when psi is a bare array.
    tol : float
        Zero threshold for individual samples.
    """
    if isinstance(psi, ComplexSamples):
        vals = psi.values.real
        if np.abs(psi.values.imag).max() > 1e-9 * max(np.abs(psi.values).max(), 1e-300):
            raise ValueError("find_real_nodes expects real-valued samples")
        x = psi.abscissae()
    else:
        vals = np.asarray(psi, dtype=float)
        if x is None:
            x = np.arange(vals.size, dtype=float)
        x = np.asarray(x, dtype=float)
    n = vals.size
    zero = np.abs(vals) <= tol
    nodes = []
    j = 0
    while j < n:
        if zero[j]:
            j0 = j
            while j < n and zero[j]:
                j += 1
            mid = 0.5 * (x[j0] + x[j - 1])
            if j0 > 0 and j < n:  # interior run only
                nodes.append(mid)
        else:
            j += 1
    sign = np.sign(vals)
    for j in range(n - 1):
        if zero[j] or zero[j + 1]:
            continue
        if sign[j] * sign[j + 1] < 0:
            # linear interpolation for the crossing
            xc = x[j] - vals[j] * (x[j + 1] - x[j]) / (vals[j + 1] - vals[j])
            nodes.append(float(xc))
    return sorted(nodes)


def check_interlacing(nodes_lo, nodes_hi) -> bool:
    """True iff exactly one element of nodes_lo lies strictly between every
    pair of consecutive elements of nodes_hi (vacuously true without such pairs).
    """
    lo = np.asarray(sorted(nodes_lo), dtype=float)
    hi = sorted(nodes_hi)
    for a, b in zip(hi[:-1], hi[1:]):
        if np.count_nonzero((lo > a) & (lo < b)) != 1:
            return False
    return True


def relative_winding(psi_a: ComplexSamples, psi_b: ComplexSamples,
                     node_tol: float | None = None,
                     max_step: float = MAX_STEP_DEFAULT) -> WindingReport:
    """Winding of the difference curve psi_a - psi_b about zero.

    Endpoint samples where the curves meet exactly (pinned endpoints, as for
    eigenfunctions sharing boundary data) are dropped; an interior intersection
    raises NodeEncountered.
    """
    from .core import Grid1D

    same = psi_a.grid is psi_b.grid or (
        isinstance(psi_a.grid, Grid1D) and isinstance(psi_b.grid, Grid1D)
        and psi_a.grid == psi_b.grid
    )
    if not same:
        raise ValueError("relative winding requires identical grids")
    d = psi_a.values - psi_b.values
    mag = np.abs(d)
    if mag.max() == 0.0:
        raise NodeEncountered(0, "curves coincide everywhere")
    tol = node_tol if node_tol is not None else NODE_TOL_REL * mag.max()
    lo, hi = 0, d.size
    while lo < hi and mag[lo] < tol:
        lo += 1
    while hi > lo and mag[hi - 1] < tol:
        hi -= 1
    if hi - lo < 2:
        raise NodeEncountered(0, "difference curve vanishes on (almost) the whole grid")
    return winding_of(d[lo:hi], node_tol=tol, max_step=max_step)


def write_profile_csv(profile: PhaseProfile, path, x=None):
    """Two-column CSV (x, theta) of an unwrapped phase profile."""
    if x is None:
        if profile.grid is None:
            x = np.arange(profile.theta.size, dtype=float)
        elif hasattr(profile.grid, "points"):
            x = profile.grid.points()
        else:
            x = profile.grid.t_grid.points()
    with open(path, "w", encoding="utf-8") as f:
        f.write("x,theta\n")
        for xi, ti in zip(x, profile.theta):
            f.write(f"{xi:.17e},{ti:.17e}\n")
