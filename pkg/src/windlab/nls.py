"""Stationary states of the cubic and quintic nonlinear lattice equation
-psi'' + V psi + |psi|^{2 sigma} psi = E psi under a unit-cell power constraint.

The modulus nonlinearity is not complex-analytic, so Newton runs on the
real/imaginary split system of doubled dimension.  The power constraint enters
as an explicit bordered row with the (complex) eigenvalue E as the free
parameter, and the phase gauge pins Im psi at the sample of maximal seed
magnitude.  Continuation ramps the power from a small value up to the target
in geometric steps, halving on divergence.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bloch import PERIOD, BandPoint
from .core import ComplexSamples, Grid1D
from .errors import NewtonDivergence, TurningPointSuspected

NEWTON_TOL = 1e-10
MAX_HALVINGS = 10


@dataclass(frozen=True)
class NonlinearState:
    """A converged stationary state over one closed lattice period."""

    energy: complex
    psi: ComplexSamples
    power: float
    residual: float
    k: float
    sigma: int
    epsilon: float
    power_path: tuple


def unit_cell_power(psi: ComplexSamples) -> float:
    """Trapezoidal quadrature of |psi|^2 over the sample grid (one period)."""
    x = psi.abscissae()
    return float(np.trapezoid(np.abs(psi.values) ** 2, x))


def _lattice_operator(epsilon: float, k: float, n: int):
    """Corner-phase second-difference plus lattice potential on n period points."""
    h = PERIOD / n
    x = h * np.arange(n)
    v = 4.0 * np.cos(x) ** 2 + 4j * epsilon * np.sin(2.0 * x)
    A = np.zeros((n, n), dtype=complex)
    idx = np.arange(n)
    A[idx, idx] = 2.0 / h**2 + v
    A[idx[:-1], idx[:-1] + 1] = -1.0 / h**2
    A[idx[1:], idx[1:] - 1] = -1.0 / h**2
    A[0, n - 1] += -np.exp(-1j * k * PERIOD) / h**2
    A[n - 1, 0] += -np.exp(+1j * k * PERIOD) / h**2
    return x, h, A


def _newton(A, h, sigma, P_target, psi, E, j0, maxit=60):
    n = psi.size
    Lr, Li = A.real, A.imag
    for _ in range(maxit):
        u, v = psi.real, psi.imag
        mod2 = u * u + v * v
        F = A @ psi + mod2**sigma * psi - E * psi
        p_res = h * float(mod2.sum()) - P_target
        g_res = v[j0]
        res = np.sqrt(np.linalg.norm(F) ** 2 + p_res**2 + g_res**2)
        scale = max(1.0, abs(E), float(np.abs(psi).max()) ** (2 * sigma))
        if res < NEWTON_TOL * scale:
            return psi, E, float(res)
        if sigma == 1:
            dRu, dRv = 3 * u * u + v * v, 2 * u * v
            dIu, dIv = 2 * u * v, u * u + 3 * v * v
        else:
            dRu, dRv = mod2 * (5 * u * u + v * v), 4 * u * v * mod2
            dIu, dIv = 4 * u * v * mod2, mod2 * (u * u + 5 * v * v)
        J = np.zeros((2 * n + 2, 2 * n + 2))
        J[:n, :n] = Lr + np.diag(dRu - E.real)
        J[:n, n:2 * n] = -Li + np.diag(dRv + E.imag)
        J[n:2 * n, :n] = Li + np.diag(dIu - E.imag)
        J[n:2 * n, n:2 * n] = Lr + np.diag(dIv - E.real)
        J[:n, 2 * n] = -u
        J[:n, 2 * n + 1] = v
        J[n:2 * n, 2 * n] = -v
        J[n:2 * n, 2 * n + 1] = -u
        J[2 * n, :n] = 2.0 * h * u
        J[2 * n, n:2 * n] = 2.0 * h * v
        J[2 * n + 1, n + j0] = 1.0
        rhs = -np.concatenate([F.real, F.imag, [p_res, g_res]])
        try:
            dx = np.linalg.solve(J, rhs)
        except np.linalg.LinAlgError as exc:
            raise TurningPointSuspected(f"near-singular Newton system: {exc}") from exc
        if not np.all(np.isfinite(dx)):
            raise NewtonDivergence("non-finite Newton step", last_iterate=(psi, E))
        psi = psi + dx[:n] + 1j * dx[n:2 * n]
        E = E + complex(dx[2 * n], dx[2 * n + 1])
    raise NewtonDivergence("Newton did not converge", last_iterate=(psi, E))


def solve_stationary_state(epsilon: float, k: float, sigma: int, P_uc: float,
                           seed: BandPoint, n: int = 192,
                           p_start: float = 0.02) -> NonlinearState:
    """Continue a linear band seed to a power-constrained stationary state.

    sigma = 1 is the cubic (Kerr) nonlinearity, sigma = 2 the quintic.  The
    returned samples live on the closed period grid [0, pi]; the wrapped value
    psi(pi) = exp(i k pi) psi(0) is appended so that trapezoidal power over the
    closed grid equals the constraint exactly.
    """
    if sigma not in (1, 2):
        raise ValueError("sigma must be 1 (cubic) or 2 (quintic)")
    if P_uc < 0:
        raise ValueError("unit-cell power must be nonnegative")
    x, h, A = _lattice_operator(epsilon, k, n)
    seed_x = seed.u.abscissae()
    u_seed = np.interp(x, seed_x, seed.u.values.real) \
        + 1j * np.interp(x, seed_x, seed.u.values.imag)
    psi = u_seed * np.exp(1j * k * x)
    j0 = int(np.argmax(np.abs(psi)))
    psi = psi * (np.abs(psi[j0]) / psi[j0])
    E = complex(seed.energy)

    if P_uc == 0.0:
        grid = Grid1D(0.0, PERIOD, n + 1)
        return NonlinearState(energy=E, psi=ComplexSamples(grid, np.zeros(n + 1, complex)),
                              power=0.0, residual=0.0, k=float(k), sigma=int(sigma),
                              epsilon=float(epsilon), power_path=(0.0,))

    targets = []
    p = min(p_start, P_uc)
    while p < P_uc:
        targets.append(p)
        p *= 2.5
    targets.append(P_uc)

    path = []
    pending = list(reversed(targets))  # stack, smallest target on top
    reached = None
    halvings = 0
    res = 0.0
    while pending:
        target = pending.pop()
        P0 = h * float(np.sum(np.abs(psi) ** 2))
        trial = psi * np.sqrt(target / P0)
        try:
            psi, E, res = _newton(A, h, sigma, target, trial, E, j0)
        except NewtonDivergence:
            if halvings >= MAX_HALVINGS:
                raise
            halvings += 1
            base = reached if reached is not None else 0.0
            pending.append(target)
            pending.append(0.5 * (base + target))
            continue
        reached = target
        path.append(target)

    # close the period: psi(pi) = exp(i k pi) psi(0)
    grid = Grid1D(0.0, PERIOD, n + 1)
    closed = np.concatenate([psi, [psi[0] * np.exp(1j * k * PERIOD)]])
    power = h * float(np.sum(np.abs(psi) ** 2))
    return NonlinearState(energy=complex(E), psi=ComplexSamples(grid, closed),
                          power=power, residual=res, k=float(k), sigma=int(sigma),
                          epsilon=float(epsilon), power_path=tuple(path))


def stationary_residual(state: NonlinearState) -> float:
    """Independent second-order stencil residual of a converged state, relative
    to the state's norm (fresh assembly, not the solver's Jacobian)."""
    n = state.psi.values.size - 1
    _, h, A = _lattice_operator(state.epsilon, state.k, n)
    psi = state.psi.values[:n]
    F = A @ psi + np.abs(psi) ** (2 * state.sigma) * psi - state.energy * psi
    return float(np.linalg.norm(F) / np.linalg.norm(psi))
