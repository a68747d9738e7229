"""The cosine initial-value problem y' = cos(pi (x - b)(y - c)): adaptive
integration, extrema counting, winding of complex-perturbed trajectories,
winding-region maps over complex initial conditions, and the shifted family.

Winding convention.  Im y of a complexified trajectory never changes sign (its
evolution equation is odd in Im y), so no real-centered curve can be encircled
by y itself.  The object that winds is the derivative curve y'(x) =
cos(pi (x-b)(y-c)): its argument sweeps pi for every half-integer level
crossed by the product (x-b)(y-c), which quantizes the winding to odd
multiples of pi and reproduces the published region maps exactly.
ivp_winding computes that derivative-curve winding by default; passing an
explicit reference trajectory instead measures the winding of the difference
curve y - y_ref about zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .errors import NodeEncountered, StepUnderflow, WindowTooSmall
from .phase import WindingReport, relative_winding, winding_of
from .core import ComplexSamples, Grid1D

# Dormand-Prince 5(4) tableau
_C = np.array([0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0])
_A = (
    (),
    (1 / 5,),
    (3 / 40, 9 / 40),
    (44 / 45, -56 / 15, 32 / 9),
    (19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729),
    (9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656),
    (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84),
)
_B5 = np.array([35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84, 0.0])
_B4 = np.array([5179 / 57600, 0.0, 7571 / 16695, 393 / 640, -92097 / 339200, 187 / 2100, 1 / 40])
_E = _B5 - _B4

H_MIN = 1e-12
BLOWUP_GUARD = 1e6
DEFAULT_N_OUT = 4096
DEFAULT_X_MAX = 20.0
DEFAULT_TOL = 1e-10


@dataclass(frozen=True)
class Trajectory:
    """A solution sampled on a uniform analysis grid.

    For the unshifted problem (b = 0), a is the initial value y(0) and the
    cosine argument is pi*x*y.  For the shifted problem (b != 0), y(0) = 0 and
    the argument is pi*(x-b)*(y-a).
    """

    x: np.ndarray
    y: np.ndarray
    a: complex
    b: float
    n_steps: int
    n_rejected: int
    max_error: float

    @property
    def center(self) -> complex:
        """Offset c in the cosine argument pi (x - b)(y - c)."""
        return 0.0 if self.b == 0.0 else self.a

    def derivative_curve(self) -> np.ndarray:
        """cos(pi (x - b)(y - c)) along the trajectory (equals y' exactly)."""
        return np.cos(np.pi * (self.x - self.b) * (self.y - self.center))

    def samples(self) -> ComplexSamples:
        grid = Grid1D(float(self.x[0]), float(self.x[-1]), self.x.size)
        return ComplexSamples(grid, self.y)


def _rhs_factory(b, c):
    b = np.asarray(b, dtype=float)
    c = np.asarray(c, dtype=complex)

    def f(x, y):
        return np.cos(np.pi * (x - b) * (y - c))

    return f


def _integrate_batch(y0, b, c, x_max, tol, n_out, guard=None):
    """Shared-step adaptive DP54 over a batch; returns (xs, ys, alive, stats).

    All batch members advance with a common step controlled by the worst
    weighted error among live members; members exceeding the overflow guard
    are frozen to NaN and excluded from step control.
    """
    if guard is None:
        guard = BLOWUP_GUARD
    y0 = np.atleast_1d(np.asarray(y0, dtype=complex))
    m = y0.size
    f = _rhs_factory(b, c)
    xs = np.linspace(0.0, x_max, n_out)
    out = np.empty((m, n_out), dtype=complex)
    out[:, 0] = y0
    alive = np.ones(m, dtype=bool)

    x = 0.0
    y = y0.copy()
    fv = f(x, y)
    h = min(1e-3, x_max)
    k = np.empty((7, m), dtype=complex)
    next_i = 1
    n_acc = n_rej = 0
    max_err = 0.0
    while x < x_max:
        h = min(h, x_max - x)
        k[0] = fv
        for s in range(1, 7):
            ys = y + h * sum(_A[s][j] * k[j] for j in range(s))
            k[s] = f(x + _C[s] * h, ys)
        y5 = y + h * (_B5[:, None] * k).sum(axis=0)
        err_vec = np.abs(h * (_E[:, None] * k).sum(axis=0))
        sc = tol + tol * np.abs(y)
        with np.errstate(invalid="ignore"):
            weighted = err_vec[alive] / sc[alive]
        err = float(np.nanmax(weighted)) if weighted.size else 0.0
        if not np.isfinite(err):
            err = 10.0
        if err <= 1.0:
            f_new = k[6].copy()  # c7 = 1 and the 7th stage sits on the 5th-order result
            while next_i < n_out and xs[next_i] <= x + h + 1e-15:
                t = (xs[next_i] - x) / h
                h00 = (1 + 2 * t) * (1 - t) ** 2
                h10 = t * (1 - t) ** 2
                h01 = t * t * (3 - 2 * t)
                h11 = t * t * (t - 1)
                out[:, next_i] = h00 * y + h10 * h * fv + h01 * y5 + h11 * h * f_new
                next_i += 1
            x += h
            y = y5
            fv = f_new
            n_acc += 1
            max_err = max(max_err, err)
            blown = alive & (np.abs(y) > guard)
            if blown.any():
                alive &= ~blown
                y[blown] = np.nan
                fv[blown] = 0.0
                if not alive.any():
                    out[:, next_i:] = np.nan
                    break
        else:
            n_rej += 1
        fac = 0.9 * err ** (-0.2) if err > 0 else 5.0
        h *= min(5.0, max(0.2, fac))
        if h < H_MIN:
            raise StepUnderflow(f"adaptive step {h:.2e} below {H_MIN} at x = {x:.6f}")
    return xs, out, alive, (n_acc, n_rej, max_err)


def integrate_cosine_ivp(a: complex, b: float = 0.0, x_max: float = DEFAULT_X_MAX,
                         tol: float = DEFAULT_TOL, n_out: int = DEFAULT_N_OUT) -> Trajectory:
    """Integrate the cosine problem on [0, x_max].

    b = 0 is the unshifted problem with y(0) = a; b != 0 is the shifted
    problem with y(0) = 0 and offset a inside the cosine.
    """
    if x_max <= 0 or tol <= 0:
        raise ValueError("x_max and tol must be positive")
    if b == 0.0:
        y0, c = complex(a), 0.0
    else:
        y0, c = 0.0, complex(a)
    xs, ys, alive, (n_acc, n_rej, max_err) = _integrate_batch(
        [y0], b, c, x_max, tol, n_out)
    if not alive[0]:
        raise StepUnderflow("trajectory exceeded the overflow guard "
                            f"({BLOWUP_GUARD:g}) before x_max")
    return Trajectory(x=xs, y=ys[0], a=complex(a), b=float(b),
                      n_steps=n_acc, n_rejected=n_rej, max_error=max_err)


def count_extrema(traj, hysteresis: float = 0.02, include_left_boundary: bool = False) -> int:
    """Count strict direction reversals of Re y, ignoring moves smaller than
    hysteresis times the sampled range (suppresses micro-oscillations and
    integration noise).

    With include_left_boundary, the first sample is counted as a one-sided
    local extremum whenever the curve leaves it monotonically.  That is the
    natural count for solutions on the half-line [0, infinity), whose left
    endpoint is a genuine boundary of the domain; interior reversals alone
    match the open-interval convention.
    """
    y = traj.y if isinstance(traj, Trajectory) else np.asarray(traj)
    yr = np.real(y)
    rng = float(yr.max() - yr.min())
    if rng == 0.0:
        return 0
    band = hysteresis * rng
    count = 0
    direction = 0  # +1 rising, -1 falling, 0 not yet established
    ref = yr[0]
    for v in yr[1:]:
        if direction == 0:
            if v > ref + band:
                direction = 1
                ref = v
            elif v < ref - band:
                direction = -1
                ref = v
        elif direction > 0:
            if v > ref:
                ref = v
            elif v < ref - band:
                count += 1
                direction = -1
                ref = v
        else:
            if v < ref:
                ref = v
            elif v > ref + band:
                count += 1
                direction = 1
                ref = v
    if include_left_boundary and direction != 0:
        count += 1
    return count


def ivp_winding(traj: Trajectory, reference: Optional[Trajectory] = None,
                node_tol: float | None = None, max_step: float = np.pi / 2) -> WindingReport:
    """Winding of a trajectory, in radians.

    Without a reference, this is the winding of the derivative curve
    cos(pi (x-b)(y-c)) about zero (the module's region-map convention, odd-pi
    quantized).  With a reference on the same analysis grid, it is the winding
    of the difference curve y - y_ref about zero, which raises NodeEncountered
    when the curves touch.
    """
    if reference is None:
        return winding_of(traj.derivative_curve(), node_tol=node_tol, max_step=max_step)
    if traj.x.size != reference.x.size or traj.x[-1] != reference.x[-1]:
        raise ValueError("trajectory and reference must share the analysis grid")
    return relative_winding(traj.samples(), reference.samples(),
                            node_tol=node_tol, max_step=max_step)


def _quantize(w: float) -> Tuple[str, int]:
    """Class label for a signed winding: nearest odd multiple of pi, or flagged."""
    if not np.isfinite(w):
        return "failed", 0
    mag = abs(w) / np.pi
    q = int(round((mag - 1.0) / 2.0)) * 2 + 1
    if q < 1 or abs(mag - q) > 0.2:
        return "flagged", 0
    return str(q), int(np.sign(w) * q)


@dataclass(frozen=True)
class WindingMap:
    """Signed windings and class labels over a grid of complex initial values."""

    re_values: np.ndarray
    im_values: np.ndarray
    windings: np.ndarray      # shape (n_re, n_im), signed, radians; NaN on failure
    classes: np.ndarray       # object array of labels: '1', '3', '5', ..., 'flagged', 'failed'
    x_max: float


# map cells advance in fixed-size shared-step batches, so results never depend
# on how many workers process the blocks
MAP_BLOCK = 256


def map_block_windings(cells: np.ndarray, x_max: float, tol: float, n_out: int) -> np.ndarray:
    """Derivative-curve windings for one block of unshifted initial values."""
    xs, ys, alive, _ = _integrate_batch(cells, 0.0, 0.0, x_max, tol, n_out)
    dcurve = np.cos(np.pi * xs[None, :] * ys)
    inc = np.angle(dcurve[:, 1:] * np.conj(dcurve[:, :-1]))
    return np.where(alive, np.nansum(inc, axis=1), np.nan)


def classify_region(re_range: Sequence[float], im_range: Sequence[float],
                    n_re: int, n_im: int, x_max: float = DEFAULT_X_MAX,
                    tol: float = 1e-8, n_out: int = 4097) -> WindingMap:
    """Winding map of the unshifted problem over a rectangle of initial values.

    Cells are the centers of an n_re x n_im partition of the rectangle.  An
    odd cell count over a symmetric Im range necessarily places its middle row
    on the real axis; those cells integrate the real problem, where every
    crossing of the derivative curve through zero contributes +pi by the
    principal-angle convention, so they classify by the correct magnitude with
    an arbitrary sign.  Windings are quantized to the nearest odd multiple of
    pi when within 0.2 pi; cells beyond that are flagged (near-separatrix),
    and integration blow-ups are recorded as failed rather than raised.
    """
    if n_re < 2 or n_im < 2:
        raise ValueError("map needs at least 2 cells per axis")
    re_lo, re_hi = map(float, re_range)
    im_lo, im_hi = map(float, im_range)
    re = re_lo + (re_hi - re_lo) * (np.arange(n_re) + 0.5) / n_re
    im = im_lo + (im_hi - im_lo) * (np.arange(n_im) + 0.5) / n_im
    RE, IM = np.meshgrid(re, im, indexing="ij")
    cells = (RE + 1j * IM).ravel()
    parts = [map_block_windings(cells[i:i + MAP_BLOCK], x_max, tol, n_out)
             for i in range(0, cells.size, MAP_BLOCK)]
    w = np.concatenate(parts).reshape(n_re, n_im)
    classes = np.empty((n_re, n_im), dtype=object)
    for i in range(n_re):
        for j in range(n_im):
            classes[i, j] = _quantize(w[i, j])[0]
    return WindingMap(re_values=re, im_values=im, windings=w, classes=classes,
                      x_max=float(x_max))


def shifted_family(a: float, n_values, x_max: float | None = None,
                   tol: float = DEFAULT_TOL, n_out: int = 8193) -> List[Trajectory]:
    """Members of the shifted family b_n = 2n/a, integrated on [0, x_max].

    The construction makes cos(pi * a * b_n) = cos(2 pi n) = 1, so y'(0) = 1
    for every member; this is asserted to machine precision.  x_max defaults
    to 2*b_n + 40 per member (past the reorganization around x = b_n).
    """
    if a == 0:
        raise ValueError("a must be nonzero")
    out = []
    for n in n_values:
        if n == 0:
            raise ValueError("family index n must be nonzero")
        b = 2.0 * n / a
        slope = np.cos(np.pi * a * b)
        assert abs(slope - 1.0) < 1e-12
        xm = x_max if x_max is not None else max(2.0 * abs(b) + 40.0, 40.0)
        out.append(integrate_cosine_ivp(a, b=b, x_max=xm, tol=tol, n_out=n_out))
    return out


def make_pair(epsilon: float, y0: float = 1.6, x_max: float = 60.0,
              tol: float = DEFAULT_TOL, n_out: int = 8193):
    """The +-shifted pair y'_pm = cos(pi (x +- 2 eps) y_pm), y(0) = y0.

    The default initial value 1.6 sits where the pair's basins differ at small
    eps and merge as eps grows, which is what the pairing comparison measures.
    """
    xs, ys, alive, (na, nr, me) = _integrate_batch(
        [complex(y0), complex(y0)], np.array([-2.0 * epsilon, 2.0 * epsilon]),
        np.array([0.0, 0.0], dtype=complex), x_max, tol, n_out)
    plus = Trajectory(x=xs, y=ys[0], a=complex(y0), b=-2.0 * epsilon,
                      n_steps=na, n_rejected=nr, max_error=me)
    minus = Trajectory(x=xs, y=ys[1], a=complex(y0), b=+2.0 * epsilon,
                       n_steps=na, n_rejected=nr, max_error=me)
    return plus, minus


def pairing_offset(y_plus: Trajectory, y_minus: Trajectory,
                   max_shift: float | None = None, n_shift: int = 1401,
                   min_overlap: float = 0.5):
    """Least-squares optimal translation s minimizing ||y_plus(x) - y_minus(x-s)||
    over the overlap window, with the misfit relative to the signal norm.

    Returns (offset, misfit).  Raises WindowTooSmall when no admissible shift
    leaves at least min_overlap of the common window.
    """
    if y_plus.x.size != y_minus.x.size or y_plus.x[-1] != y_minus.x[-1]:
        raise ValueError("pair must share the analysis grid")
    xs = y_plus.x
    span = xs[-1] - xs[0]
    if max_shift is None:
        max_shift = 4.0 * (abs(y_plus.b) + abs(y_minus.b)) + 6.0
    max_shift = min(max_shift, (1.0 - min_overlap) * span)
    if max_shift <= 0:
        raise WindowTooSmall("no shift leaves the required overlap")
    yp = np.real(y_plus.y)
    ym = np.real(y_minus.y)
    best = (np.inf, 0.0)
    for s in np.linspace(-max_shift, max_shift, n_shift):
        lo, hi = max(xs[0], xs[0] + s), min(xs[-1], xs[-1] + s)
        mask = (xs >= lo) & (xs <= hi)
        if np.count_nonzero(mask) < min_overlap * xs.size:
            continue
        shifted = np.interp(xs[mask] - s, xs, ym)
        ref = yp[mask]
        misfit = float(np.linalg.norm(ref - shifted) / np.linalg.norm(ref))
        if misfit < best[0]:
            best = (misfit, float(s))
    if not np.isfinite(best[0]):
        raise WindowTooSmall("overlap constraint rejected every shift")
    return best[1], best[0]
