"""Separable 2D eigenfunction fields, phase-angle maps, and the diagonal
winding total.

Winding in 2D is operationalized as the 1D winding along the main diagonal
(corner to corner); for a tensor-product field on equal-length grids the
diagonal samples are exact factor products, so the diagonal winding equals the
sum of the two 1D factor windings to rounding accuracy.

Factor conventions (shift eps, index a):

* square well:  sin(a x) + i*eps*cos(a x)  -- the two-solution combination;
  eps = -1 gives exp(i a x) up to a constant phase, so negative shifts wind
  positively (phase increasing along +x).
* oscillator:   H_a(x + i*eps) exp(-(x + i*eps)^2 / 2), the decaying branch.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import Grid1D, hermite_complex
from .errors import NodeEncountered
from .phase import winding_of

FIELD_FAMILIES = ("SquareWell", "HarmonicOscillator")


@dataclass(frozen=True)
class Field2D:
    grid_x: Grid1D
    grid_y: Grid1D
    values: np.ndarray            # shape (n_x, n_y)
    indices: tuple
    shifts: tuple

    def __post_init__(self):
        v = np.asarray(self.values, dtype=complex)
        if v.shape != (self.grid_x.n_points, self.grid_y.n_points):
            raise ValueError("field shape must match the grids")
        if not np.all(np.isfinite(v)):
            raise ValueError("field values must be finite")
        object.__setattr__(self, "values", v)


def _factor(family: str, a: int, grid: Grid1D, eps: float) -> np.ndarray:
    x = grid.points()
    if family == "SquareWell":
        return np.sin(a * x) + 1j * eps * np.cos(a * x)
    if family == "HarmonicOscillator":
        z = x.astype(complex) + 1j * eps
        return hermite_complex(a, z) * np.exp(-0.5 * z * z)
    raise ValueError(f"family must be one of {FIELD_FAMILIES}")


def separable_field(family: str, indices, grids, shifts) -> Field2D:
    """Tensor product of two 1D factors.

    indices are the mode numbers (a1, a2); shifts are the per-axis complex
    displacements (eps1, eps2).  Oscillator grids should extend far enough
    that boundary magnitudes are negligible (|x| >= 8 for indices up to 3).
    """
    a1, a2 = indices
    if a1 < 0 or a2 < 0:
        raise ValueError("mode indices must be nonnegative")
    gx, gy = grids
    e1, e2 = shifts
    f1 = _factor(family, a1, gx, e1)
    f2 = _factor(family, a2, gy, e2)
    return Field2D(grid_x=gx, grid_y=gy, values=np.outer(f1, f2),
                   indices=(int(a1), int(a2)), shifts=(float(e1), float(e2)))


def phase_field(field: Field2D, node_tol: float | None = None):
    """Per-cell principal phase (mod 2 pi, in (-pi, pi]) and the diagonal winding.

    The diagonal runs corner to corner.  Equal-length grids use the exact index
    diagonal; otherwise the field is bilinearly interpolated along the
    parametric diagonal at max(n_x, n_y) samples.

    Returns (phase_matrix, WindingReport).  Raises NodeEncountered when the
    diagonal passes through a zero of the field.
    """
    theta = np.angle(field.values)
    nx, ny = field.values.shape
    if nx == ny:
        diag = np.diagonal(field.values).copy()
    else:
        n = max(nx, ny)
        t = np.linspace(0.0, 1.0, n)
        xi = t * (nx - 1)
        yi = t * (ny - 1)
        i0 = np.clip(xi.astype(int), 0, nx - 2)
        j0 = np.clip(yi.astype(int), 0, ny - 2)
        fx = xi - i0
        fy = yi - j0
        v = field.values
        diag = ((1 - fx) * (1 - fy) * v[i0, j0] + fx * (1 - fy) * v[i0 + 1, j0]
                + (1 - fx) * fy * v[i0, j0 + 1] + fx * fy * v[i0 + 1, j0 + 1])
    # decaying fields legitimately fade below tolerance at the corners; trim
    # the contiguous faded ends and only treat interior zeros as nodes
    mag = np.abs(diag)
    tol = node_tol if node_tol is not None else 1e-10 * mag.max()
    lo, hi = 0, diag.size
    while lo < hi and mag[lo] < tol:
        lo += 1
    while hi > lo and mag[hi - 1] < tol:
        hi -= 1
    if hi - lo < 2:
        raise NodeEncountered(0, "diagonal fades or vanishes almost everywhere")
    report = winding_of(diag[lo:hi], node_tol=tol)
    return theta, report


def diagonal_winding(field: Field2D) -> float:
    """Shorthand for the signed diagonal winding in radians."""
    return phase_field(field)[1].winding


def count_phase_jumps(field: Field2D, axis: int, position: float,
                      threshold: float = np.pi / 2) -> int:
    """Number of phase discontinuities crossed along one grid line.

    axis = 0 scans along x at fixed y = position; axis = 1 scans along y at
    fixed x.  A discontinuity is a principal phase increment above threshold
    between adjacent cells (structural comparison for phase-map topology).
    """
    if axis == 0:
        j = int(np.argmin(np.abs(field.grid_y.points() - position)))
        line = field.values[:, j]
    else:
        i = int(np.argmin(np.abs(field.grid_x.points() - position)))
        line = field.values[i, :]
    inc = np.angle(line[1:] * np.conj(line[:-1]))
    # a discontinuity may split over two cells when a zero line passes near a
    # grid point, so also accept a two-step swing past the threshold
    jumps = 0
    j = 0
    while j < inc.size:
        if abs(inc[j]) > threshold:
            jumps += 1
            j += 1
        elif (j + 1 < inc.size and abs(inc[j] + inc[j + 1]) > threshold
              and abs(inc[j]) > threshold / 3 and abs(inc[j + 1]) > threshold / 3):
            jumps += 1
            j += 2
        else:
            j += 1
    return jumps
