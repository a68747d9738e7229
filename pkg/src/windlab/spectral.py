"""Linear eigensolvers for complex potentials, ODE transport along complex
contours, and WKB estimates.

The discretized operator is a dense complex non-symmetric matrix; eigenvalues
come from LAPACK's general complex eigensolver (Hessenberg reduction plus
shifted QR), with one inverse-iteration polish per returned eigenvector and an
independent residual check.  Tridiagonal structure is exploited only for
assembly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List

import numpy as np

from .core import ComplexSamples, Contour, Grid1D, SpectralProblem, eval_potential, hermite_complex
from .errors import ConvergenceFailure, StepFailure, TurningPointOnGrid, UnsupportedBoundary

RESIDUAL_REL = 1e-8


@dataclass(frozen=True)
class EigenPair:
    """One eigenvalue with its unit-norm, gauge-fixed eigenfunction samples."""

    energy: complex
    psi: ComplexSamples
    index: int
    residual: float


@dataclass(frozen=True)
class Spectrum:
    """Eigenpairs sorted by ascending Re E, ties by ascending Im E; indices from 1."""

    pairs: tuple

    def energies(self) -> np.ndarray:
        return np.array([p.energy for p in self.pairs])

    def __len__(self):
        return len(self.pairs)

    def __getitem__(self, i):
        return self.pairs[i]


def sample_points(problem: SpectralProblem, n: int) -> np.ndarray:
    """Abscissae carrying the unknowns of the discretized operator.

    Dirichlet: the n interior points.  Bloch: n points spanning one period,
    left endpoint included, right endpoint wrapped.
    """
    a, b = problem.domain.x_min, problem.domain.x_max
    if problem.boundary == "Dirichlet":
        h = (b - a) / (n + 1)
        return a + h * np.arange(1, n + 1)
    h = (b - a) / n
    return a + h * np.arange(n)


def solution_grid(problem: SpectralProblem, n: int) -> Grid1D:
    """Grid1D matching sample_points(problem, n)."""
    x = sample_points(problem, n)
    return Grid1D(float(x[0]), float(x[-1]), n)


def discretize(problem: SpectralProblem, n: int) -> np.ndarray:
    """Second-order central-difference matrix of -d2/dx2 + V on n sample points.

    Dirichlet boundaries give a tridiagonal matrix over the interior points;
    Bloch boundaries give a cyclic tridiagonal over one period whose corner
    entries carry the phase factors exp(+-i k P) of the quasi-period P.
    """
    if problem.nonlinearity is not None:
        raise UnsupportedBoundary("discretize handles linear problems only")
    if n < 16:
        raise ValueError("need n >= 16 sample points")
    a, b = problem.domain.x_min, problem.domain.x_max
    x = sample_points(problem, n)
    v = eval_potential(problem.potential, x.astype(complex))
    A = np.zeros((n, n), dtype=complex)
    idx = np.arange(n)
    if problem.boundary == "Dirichlet":
        h = (b - a) / (n + 1)
        A[idx, idx] = 2.0 / h**2 + v
        A[idx[:-1], idx[:-1] + 1] = -1.0 / h**2
        A[idx[1:], idx[1:] - 1] = -1.0 / h**2
        return A
    if problem.boundary == "Bloch":
        period = b - a
        h = period / n
        k = problem.bloch_k
        A[idx, idx] = 2.0 / h**2 + v
        A[idx[:-1], idx[:-1] + 1] = -1.0 / h**2
        A[idx[1:], idx[1:] - 1] = -1.0 / h**2
        A[0, n - 1] += -np.exp(-1j * k * period) / h**2
        A[n - 1, 0] += -np.exp(+1j * k * period) / h**2
        return A
    raise UnsupportedBoundary(problem.boundary)


def _sorted_eig(A: np.ndarray, vectors: bool = True):
    if vectors:
        w, v = np.linalg.eig(A)
    else:
        w, v = np.linalg.eigvals(A), None
    order = np.lexsort((w.imag, w.real))
    return (w[order], v[:, order] if v is not None else None)


def _polish(A: np.ndarray, w: complex, v: np.ndarray):
    """One inverse-iteration step at a slightly displaced shift; keep the better."""
    n = A.shape[0]
    shift = w + 1e-10 * (abs(w) + 1.0)
    try:
        u = np.linalg.solve(A - shift * np.eye(n), v)
    except np.linalg.LinAlgError:
        return v
    u = u / np.linalg.norm(u)
    if np.linalg.norm(A @ u - w * u) < np.linalg.norm(A @ v - w * v):
        return u
    return v


def solve_linear_spectrum(problem: SpectralProblem, n: int, n_modes: int) -> Spectrum:
    """Lowest n_modes eigenpairs (by Re E, ties by Im E) of the discretized operator.

    Eigenvectors are polished by inverse iteration, scaled so the sample of
    largest magnitude is real positive, and normalized to unit L2 norm over
    the domain (with the grid weight h).  An independent matrix-vector
    residual must satisfy ||A v - E v|| < 1e-8 * max(1, max|E|).
    """
    A = discretize(problem, n)
    w, v = _sorted_eig(A)
    if n_modes > n:
        raise ValueError("more modes requested than matrix dimension")
    grid = solution_grid(problem, n)
    if problem.boundary == "Dirichlet":
        h = problem.width / (n + 1)
    else:
        h = problem.width / n
    scale = max(1.0, float(np.abs(w[:n_modes]).max()))
    pairs: List[EigenPair] = []
    for m in range(n_modes):
        vec = _polish(A, w[m], v[:, m])
        res = float(np.linalg.norm(A @ vec - w[m] * vec) / np.linalg.norm(vec))
        if res > RESIDUAL_REL * scale:
            raise ConvergenceFailure(
                f"mode {m + 1}: residual {res:.3e} exceeds {RESIDUAL_REL * scale:.3e}")
        j = int(np.argmax(np.abs(vec)))
        vec = vec * (np.abs(vec[j]) / vec[j])
        vec = vec / np.sqrt(h * np.sum(np.abs(vec) ** 2))
        pairs.append(EigenPair(energy=complex(w[m]), psi=ComplexSamples(grid, vec),
                               index=m + 1, residual=res))
    return Spectrum(pairs=tuple(pairs))


def eigenvalues_only(problem: SpectralProblem, n: int, n_modes: int) -> np.ndarray:
    """Lowest n_modes eigenvalues without eigenvectors (cheaper for scans)."""
    w, _ = _sorted_eig(discretize(problem, n), vectors=False)
    return w[:n_modes]


def integrate_along_contour(problem: SpectralProblem, contour: Contour, energy: complex,
                            psi0: complex, dpsi0: complex,
                            overflow_guard: float = 1e12) -> ComplexSamples:
    """Transport psi'' = (V(z) - E) psi along the sampled contour.

    The path is taken linear between contour samples; each segment is one
    classical RK4 step in the parameter t (fourth order).  psi0 and dpsi0 are
    the value and z-derivative at the first contour point.
    """
    if problem.nonlinearity is not None:
        raise UnsupportedBoundary("contour transport handles linear problems only")
    z = contour.z()
    t = contour.t_grid.points()
    m = z.size
    out = np.empty(m, dtype=complex)
    out[0] = psi0
    y = np.array([psi0, dpsi0], dtype=complex)
    spec = problem.potential

    def rhs(zp, dz, y):
        return np.array([y[1] * dz, (eval_potential(spec, zp) - energy) * y[0] * dz],
                        dtype=complex)

    guard = overflow_guard * (1.0 + abs(psi0) + abs(dpsi0))
    for j in range(m - 1):
        dt = t[j + 1] - t[j]
        dz = (z[j + 1] - z[j]) / dt
        zm = 0.5 * (z[j] + z[j + 1])
        k1 = rhs(z[j], dz, y)
        k2 = rhs(zm, dz, y + 0.5 * dt * k1)
        k3 = rhs(zm, dz, y + 0.5 * dt * k2)
        k4 = rhs(z[j + 1], dz, y + dt * k3)
        y = y + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        if not np.all(np.isfinite(y)) or abs(y[0]) > guard:
            raise StepFailure(f"transport overflow at segment {j}")
        out[j + 1] = y[0]
    return ComplexSamples(contour, out)


def wkb_eigenvalue(n: int, problem: SpectralProblem, eps_wkb: float = 1.0) -> float:
    """Leading-order eigenvalue estimate n^2 pi^2 eps^2 / (4 L^2) on [-L, L]."""
    if n < 1:
        raise ValueError("mode index starts at 1")
    L = 0.5 * problem.width
    return n * n * np.pi**2 * eps_wkb**2 / (4.0 * L * L)


def _tracked_sqrt(values: np.ndarray) -> np.ndarray:
    """Square root with continuous branch tracking along the sample sequence."""
    q = np.sqrt(values.astype(complex))
    for j in range(1, q.size):
        if abs(q[j] - q[j - 1]) > abs(q[j] + q[j - 1]):
            q[j] = -q[j]
    return q


def wkb_eigenfunction(n: int, problem: SpectralProblem, grid: Grid1D,
                      eps_wkb: float = 1.0, turning_tol: float = 1e-9) -> ComplexSamples:
    """Leading-order eigenfunction: sin of the cumulative momentum integral over
    the quartic-root amplitude, with continuous branch tracking of sqrt(E - V).

    The quadrature starts at the left endpoint of the problem domain, which
    must coincide with the evaluation grid's left edge.
    """
    E = wkb_eigenvalue(n, problem, eps_wkb)
    x = grid.points()
    v = eval_potential(problem.potential, x.astype(complex))
    under = E - v
    if np.min(np.abs(under)) < turning_tol * max(1.0, abs(E)):
        j = int(np.argmin(np.abs(under)))
        raise TurningPointOnGrid(f"|E - V| ~ {abs(under[j]):.2e} at x = {x[j]:.6f}")
    q = _tracked_sqrt(under)
    r = _tracked_sqrt(q)  # (E - V)^{1/4}, branch-continuous
    phi = np.concatenate([[0.0 + 0.0j], np.cumsum(0.5 * (q[1:] + q[:-1]) * np.diff(x))])
    psi = np.sin(phi / eps_wkb) / r
    norm = np.sqrt(grid.h * np.sum(np.abs(psi) ** 2))
    return ComplexSamples(grid, psi / norm)


def shifted_oscillator_eigenfunction(n: int, epsilon: float, grid: Grid1D) -> ComplexSamples:
    """Closed-form eigenfunction H_n(x + i eps) exp(-(x + i eps)^2 / 2) of the
    complex-shifted oscillator, unit-normalized on the grid.

    The decaying exponential sign is used (bound states).
    """
    z = grid.points().astype(complex) + 1j * epsilon
    psi = hermite_complex(n, z) * np.exp(-0.5 * z * z)
    norm = np.sqrt(grid.h * np.sum(np.abs(psi) ** 2))
    return ComplexSamples(grid, psi / norm)


def residual_norm(problem: SpectralProblem, n: int, pair: EigenPair) -> float:
    """Independent discrete residual ||A psi - E psi|| / ||psi|| from a fresh
    matrix assembly (not the solver's internals)."""
    A = discretize(problem, n)
    v = pair.psi.values
    return float(np.linalg.norm(A @ v - pair.energy * v) / np.linalg.norm(v))
