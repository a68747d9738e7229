"""Domain types shared by all modules: grids, sampled complex curves, potential
families, complex contours, and Hermite polynomial evaluation.

Potentials are closed-form evaluators (not sampled arrays) so that they can be
evaluated at arbitrary complex points, which contour integration requires.
Every builtin family carries a real strength parameter ``epsilon`` and is
real-valued on the real axis at ``epsilon = 0``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .errors import NonInjectivePath, UnknownFamily

FAMILIES = ("SquareWell", "ShiftedHO", "CubicPT", "LinearPT", "PeriodicPT", "XSinX", "Custom")

BOUNDARIES = ("Dirichlet", "Bloch")

NONLINEARITIES = (None, "Cubic", "Quintic")


@dataclass(frozen=True)
class Grid1D:
    """Uniform grid on [x_min, x_max], endpoints included."""

    x_min: float
    x_max: float
    n_points: int

    def __post_init__(self):
        if not self.x_min < self.x_max:
            raise ValueError(f"x_min must be below x_max, got [{self.x_min}, {self.x_max}]")
        if self.n_points < 3:
            raise ValueError(f"need at least 3 points, got {self.n_points}")

    @property
    def h(self) -> float:
        return (self.x_max - self.x_min) / (self.n_points - 1)

    def points(self) -> np.ndarray:
        return np.linspace(self.x_min, self.x_max, self.n_points)


@dataclass(frozen=True, eq=False)
class Contour:
    """Complex path z(t) = f_R(t) + i*epsilon*f_I(t) sampled on a parameter grid.

    At epsilon = 0 the path is the real segment traced by f_R.
    """

    t_grid: Grid1D
    f_real: np.ndarray
    f_imag: np.ndarray
    epsilon: float

    def __post_init__(self):
        fr = np.asarray(self.f_real, dtype=float)
        fi = np.asarray(self.f_imag, dtype=float)
        if fr.shape != (self.t_grid.n_points,) or fi.shape != (self.t_grid.n_points,):
            raise ValueError("contour samples must match the parameter grid length")
        object.__setattr__(self, "f_real", fr)
        object.__setattr__(self, "f_imag", fi)

    def z(self) -> np.ndarray:
        return self.f_real + 1j * self.epsilon * self.f_imag

    @property
    def n_points(self) -> int:
        return self.t_grid.n_points


@dataclass(frozen=True, eq=False)
class ComplexSamples:
    """A complex-valued function sampled on a Grid1D or along a Contour."""

    grid: object  # Grid1D or Contour
    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=complex)
        n = self.grid.n_points
        if v.shape != (n,):
            raise ValueError(f"expected {n} samples, got shape {v.shape}")
        if not np.all(np.isfinite(v)):
            raise ValueError("samples must be finite")
        object.__setattr__(self, "values", v)

    def abscissae(self) -> np.ndarray:
        """Real parameter values: grid points, or the contour's t grid."""
        if isinstance(self.grid, Grid1D):
            return self.grid.points()
        return self.grid.t_grid.points()


@dataclass(frozen=True)
class PotentialSpec:
    """A potential family with its strength parameter and extra coefficients.

    Builtin families (z complex, eps = epsilon):

    ==========  =====================================
    SquareWell  0  (walls realized by the boundary)
    ShiftedHO   (z + i*eps)**2
    CubicPT     i*eps*z**3
    LinearPT    4 - 4i*eps*z
    PeriodicPT  4*cos(z)**2 + 4i*eps*sin(2z)
    XSinX       z*sin(z) + i*eps*cos(3z)
    Custom      base(z) + i*eps*perturbation(z)
    ==========  =====================================

    A Custom potential supplies real polynomial coefficients (ascending) and
    trigonometric terms (a, b, omega) meaning a*cos(omega z) + b*sin(omega z),
    for the Hermitian base and for the perturbation separately.
    """

    family: str
    epsilon: float = 0.0
    poly_base: Sequence[float] = field(default_factory=tuple)
    trig_base: Sequence[tuple] = field(default_factory=tuple)
    poly_pert: Sequence[float] = field(default_factory=tuple)
    trig_pert: Sequence[tuple] = field(default_factory=tuple)

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise UnknownFamily(f"unknown potential family {self.family!r}")

    def to_dict(self) -> dict:
        d = {"family": self.family, "epsilon": self.epsilon}
        if self.family == "Custom":
            d["poly_base"] = list(self.poly_base)
            d["trig_base"] = [list(t) for t in self.trig_base]
            d["poly_pert"] = list(self.poly_pert)
            d["trig_pert"] = [list(t) for t in self.trig_pert]
        return d

    @staticmethod
    def from_dict(d: dict) -> "PotentialSpec":
        return PotentialSpec(
            family=d["family"],
            epsilon=float(d.get("epsilon", 0.0)),
            poly_base=tuple(d.get("poly_base", ())),
            trig_base=tuple(tuple(t) for t in d.get("trig_base", ())),
            poly_pert=tuple(d.get("poly_pert", ())),
            trig_pert=tuple(tuple(t) for t in d.get("trig_pert", ())),
        )


@dataclass(frozen=True)
class SpectralProblem:
    """A potential on a domain with boundary conditions and optional nonlinearity."""

    potential: PotentialSpec
    domain: Grid1D
    boundary: str = "Dirichlet"
    bloch_k: float = 0.0
    nonlinearity: Optional[str] = None
    power: Optional[float] = None

    def __post_init__(self):
        if self.boundary not in BOUNDARIES:
            raise ValueError(f"boundary must be one of {BOUNDARIES}")
        if self.boundary == "Bloch":
            if self.potential.family not in ("PeriodicPT", "Custom"):
                raise ValueError("Bloch boundary requires a periodic potential family")
            zone = np.pi / (self.domain.x_max - self.domain.x_min)
            if not -zone - 1e-12 <= self.bloch_k < zone + 1e-12:
                raise ValueError(f"Bloch wavenumber outside the reduced zone [{-zone}, {zone})")
        if self.nonlinearity not in NONLINEARITIES:
            raise ValueError(f"nonlinearity must be one of {NONLINEARITIES}")
        if (self.power is not None) != (self.nonlinearity is not None):
            raise ValueError("power must be given exactly when a nonlinearity is present")
        if self.power is not None and self.power < 0:
            raise ValueError("power must be nonnegative")

    @property
    def width(self) -> float:
        return self.domain.x_max - self.domain.x_min

    def to_dict(self) -> dict:
        d = {
            "potential": self.potential.to_dict(),
            "domain": {"x_min": self.domain.x_min, "x_max": self.domain.x_max,
                       "n_points": self.domain.n_points},
            "boundary": self.boundary,
        }
        if self.boundary == "Bloch":
            d["bloch_k"] = self.bloch_k
        if self.nonlinearity is not None:
            d["nonlinearity"] = self.nonlinearity
            d["power"] = self.power
        return d

    @staticmethod
    def from_dict(d: dict) -> "SpectralProblem":
        g = d["domain"]
        return SpectralProblem(
            potential=PotentialSpec.from_dict(d["potential"]),
            domain=Grid1D(float(g["x_min"]), float(g["x_max"]), int(g["n_points"])),
            boundary=d.get("boundary", "Dirichlet"),
            bloch_k=float(d.get("bloch_k", 0.0)),
            nonlinearity=d.get("nonlinearity"),
            power=d.get("power"),
        )


def _poly_trig(z, poly, trig):
    out = np.zeros_like(np.asarray(z, dtype=complex))
    for p, c in enumerate(poly):
        out = out + c * np.asarray(z, dtype=complex) ** p
    for (a, b, omega) in trig:
        out = out + a * np.cos(omega * np.asarray(z, dtype=complex)) \
                  + b * np.sin(omega * np.asarray(z, dtype=complex))
    return out


def eval_potential(spec: PotentialSpec, z):
    """Evaluate the potential family at a complex point (or array of points).

    The evaluator is analytic in z; at epsilon = 0 every builtin family is
    real on the real axis.
    """
    z = np.asarray(z, dtype=complex)
    eps = spec.epsilon
    if spec.family == "SquareWell":
        out = np.zeros_like(z)
    elif spec.family == "ShiftedHO":
        out = (z + 1j * eps) ** 2
    elif spec.family == "CubicPT":
        out = 1j * eps * z**3
    elif spec.family == "LinearPT":
        out = 4.0 - 4j * eps * z
    elif spec.family == "PeriodicPT":
        out = 4.0 * np.cos(z) ** 2 + 4j * eps * np.sin(2.0 * z)
    elif spec.family == "XSinX":
        out = z * np.sin(z) + 1j * eps * np.cos(3.0 * z)
    elif spec.family == "Custom":
        out = _poly_trig(z, spec.poly_base, spec.trig_base) \
            + 1j * eps * _poly_trig(z, spec.poly_pert, spec.trig_pert)
    else:  # pragma: no cover - guarded in __post_init__
        raise UnknownFamily(spec.family)
    if out.ndim == 0:
        return complex(out)
    return out


def hermite_complex(n: int, z):
    """Physicists' Hermite polynomial H_n at a complex argument.

    Uses the three-term recurrence H_{n+1}(z) = 2z H_n(z) - 2n H_{n-1}(z).
    """
    if n < 0:
        raise ValueError("order must be nonnegative")
    z = np.asarray(z, dtype=complex)
    h_prev = np.ones_like(z)
    if n == 0:
        return complex(h_prev) if h_prev.ndim == 0 else h_prev
    h = 2.0 * z
    for m in range(1, n):
        h, h_prev = 2.0 * z * h - 2.0 * m * h_prev, h
    return complex(h) if h.ndim == 0 else h


def make_contour(f_real, f_imag, epsilon: float, t_grid: Grid1D) -> Contour:
    """Build a contour record from samples of f_R(t) and f_I(t).

    Raises NonInjectivePath if two sampled path points coincide.
    """
    fr = np.asarray(f_real, dtype=float)
    fi = np.asarray(f_imag, dtype=float)
    c = Contour(t_grid=t_grid, f_real=fr, f_imag=fi, epsilon=float(epsilon))
    z = c.z()
    order = np.lexsort((z.imag, z.real))
    zs = z[order]
    if np.any((np.diff(zs.real) == 0.0) & (np.diff(zs.imag) == 0.0)):
        raise NonInjectivePath("two contour sample points coincide")
    return c


def line_contour(x_min: float, x_max: float, height: float, n_points: int) -> Contour:
    """Horizontal contour Im z = height from x_min to x_max."""
    t = Grid1D(x_min, x_max, n_points)
    ts = t.points()
    return make_contour(ts, np.ones_like(ts), height, t)


def arc_contour(x_min: float, x_max: float, epsilon: float, n_points: int) -> Contour:
    """Arc with real endpoints: f_I(t) = (t - x_min)(x_max - t), scaled by epsilon."""
    t = Grid1D(x_min, x_max, n_points)
    ts = t.points()
    return make_contour(ts, (ts - x_min) * (x_max - ts), epsilon, t)


def bump_contour(x_min: float, x_max: float, height: float, n_points: int) -> Contour:
    """Contour at Im z = height with a sine bump, same endpoints as the line contour."""
    t = Grid1D(x_min, x_max, n_points)
    ts = t.points()
    s = np.pi * (ts - x_min) / (x_max - x_min)
    return make_contour(ts, 1.0 + np.sin(s), height, t)
