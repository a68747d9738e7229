import numpy as np
import pytest

from windlab.core import ComplexSamples, Grid1D
from windlab.errors import AliasingSuspected, NodeEncountered
from windlab.phase import (check_interlacing, find_real_nodes, relative_winding,
                           unwrap_phase, winding_number, winding_of)

GRID = Grid1D(0.0, np.pi, 1001)
X = GRID.points()


def test_unwrap_helix():
    prof = unwrap_phase(np.exp(3j * X))
    assert prof.theta[0] == pytest.approx(0.0)
    assert np.allclose(prof.theta, 3 * X, atol=1e-12)


def test_unwrap_constant():
    prof = unwrap_phase(np.ones(100, dtype=complex))
    assert np.all(prof.theta == 0.0)


def test_unwrap_node_raises():
    # boundary zero reported first on [0, pi]
    with pytest.raises(NodeEncountered) as exc:
        unwrap_phase(np.sin(4 * X) + 0j)
    assert exc.value.index == 0
    # starting inside with an explicit tolerance, the first flagged sample is
    # the interior node of sin(4x) at pi/4
    x = np.linspace(0.1, np.pi, 1001)
    with pytest.raises(NodeEncountered) as exc:
        unwrap_phase(np.sin(4 * x) + 0j, node_tol=0.02)
    assert x[exc.value.index] == pytest.approx(np.pi / 4, abs=0.02)


def test_unwrap_aliasing_gate():
    coarse = np.exp(2.0j * np.arange(30))  # 2 rad per step
    with pytest.raises(AliasingSuspected):
        unwrap_phase(coarse)
    prof = unwrap_phase(coarse, max_step=2.5)
    assert winding_number(prof).winding == pytest.approx(2.0 * 29)
    assert winding_number(prof).aliasing_margin == pytest.approx(2.0)
    with pytest.raises(ValueError):
        unwrap_phase(coarse, max_step=3.5)  # bound must stay below pi


def test_winding_signs():
    assert winding_of(np.exp(3j * X)).winding == pytest.approx(3 * np.pi, abs=1e-9)
    helix = np.sin(4 * X) + 1j * np.cos(4 * X)  # = i exp(-4ix)
    assert winding_of(helix).winding == pytest.approx(-4 * np.pi, abs=1e-9)


def test_winding_two_loops_up_two_down_cancels():
    # phase climbs two turns then unwinds them: net zero
    theta = 4 * np.pi * np.sin(X / 2) ** 2
    theta = np.concatenate([theta, theta[::-1]])
    curve = np.exp(1j * theta)
    assert winding_of(curve).winding == pytest.approx(0.0, abs=1e-12)


def test_gauge_invariance():
    curve = np.exp(3j * X) * (1 + 0.3 * np.cos(X))
    w0 = winding_of(curve).winding
    for c in (2.0, -1.0, 0.3 - 1.7j):
        assert winding_of(c * curve).winding == pytest.approx(w0, abs=1e-12)


def test_reversal_antisymmetry():
    curve = np.exp(3j * X) + 0.2
    assert winding_of(curve[::-1]).winding == pytest.approx(-winding_of(curve).winding,
                                                            abs=1e-12)


def test_concatenation_additivity():
    curve = np.exp(3j * X) * (1 + 0.3 * np.sin(X))
    mid = 500
    w_left = winding_of(curve[:mid + 1]).winding
    w_right = winding_of(curve[mid:]).winding
    assert w_left + w_right == pytest.approx(winding_of(curve).winding, abs=1e-12)


@pytest.mark.parametrize("c1,c2", [(1.0, 1.0), (1.0, 0.4), (2.5, 0.05), (0.3, 1.7)])
def test_elliptic_helices_share_winding(c1, c2):
    # c1 sin(nx) + i c2 cos(nx) winds -n pi for any positive pair; eccentricity
    # grows as c2 -> 0 but the winding is unchanged
    n = 3
    curve = c1 * np.sin(n * X) + 1j * c2 * np.cos(n * X)
    assert winding_of(curve).winding == pytest.approx(-n * np.pi, abs=1e-9)


def test_refinement_stability():
    for m in (301, 601, 1201):
        x = np.linspace(0, np.pi, m)
        rep = winding_of(np.exp(5j * x) * (1 + 0.4 * np.sin(3 * x)))
        assert rep.winding == pytest.approx(5 * np.pi, abs=rep.aliasing_margin)


def test_find_real_nodes():
    nodes = find_real_nodes(np.sin(4 * X), X, tol=1e-12)
    assert np.allclose(nodes, [np.pi / 4, np.pi / 2, 3 * np.pi / 4], atol=1e-5)
    nodes = find_real_nodes(np.sin(3 * X), X, tol=1e-12)
    assert np.allclose(nodes, [np.pi / 3, 2 * np.pi / 3], atol=1e-5)
    assert find_real_nodes(np.ones(50), tol=1e-12) == []
    # boundary zeros of sin(x) on [0, pi] are not nodes
    assert find_real_nodes(np.sin(X), X, tol=1e-12) == []


def test_interlacing():
    lo = find_real_nodes(np.sin(3 * X), X, tol=1e-12)
    hi = find_real_nodes(np.sin(4 * X), X, tol=1e-12)
    assert check_interlacing(lo, hi)
    assert check_interlacing([], [np.pi / 2])          # vacuous
    assert not check_interlacing([0.11, 0.12], [0.5, 0.9])


def test_relative_winding_against_closed_form():
    # arg(e^{i(n+1)x} - e^{inx}) = n x + x/2 + pi/2, so the winding over the
    # open interval (0, pi] is (n + 1/2)(pi - h); the endpoint intersection at
    # x = 0 is pinned and dropped
    n = 3
    a = ComplexSamples(GRID, np.exp(1j * (n + 1) * X))
    b = ComplexSamples(GRID, np.exp(1j * n * X))
    rep = relative_winding(a, b)
    expected = (n + 0.5) * (np.pi - GRID.h)
    assert rep.winding == pytest.approx(expected, abs=1e-9)
    assert rep.winding == pytest.approx((n + 0.5) * np.pi, abs=4 * GRID.h)

    one = ComplexSamples(GRID, np.ones_like(X, dtype=complex))
    e1 = ComplexSamples(GRID, np.exp(1j * X))
    rep = relative_winding(e1, one)
    assert rep.winding == pytest.approx(0.5 * (np.pi - GRID.h), abs=1e-9)


def test_relative_winding_scaled_curve():
    psi = ComplexSamples(GRID, np.exp(3j * X) + 0.2)
    half = ComplexSamples(GRID, 0.5 * (np.exp(3j * X) + 0.2))
    rep = relative_winding(psi, half)  # difference is 0.5 psi
    assert rep.winding == pytest.approx(winding_of(psi.values).winding, abs=1e-12)


def test_relative_winding_interior_touch_raises():
    a = ComplexSamples(GRID, np.exp(1j * X))
    with pytest.raises(NodeEncountered):
        relative_winding(a, a)
