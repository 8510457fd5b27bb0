import math

import numpy as np
import pytest

import maxcoh


def test_selftest_passes():
    lines = maxcoh.selftest(7)
    assert lines
    assert all(l["pass"] for l in lines), lines


def test_cubic_and_dressed_state():
    r = sorted(maxcoh.solve_cubic(1.0, -6.0, 11.0, -6.0))
    assert r == pytest.approx([1.0, 2.0, 3.0], rel=1e-12)
    d = maxcoh.dressed_state(3.0, 2.0)
    assert d.lambda0 == pytest.approx(1.0)
    assert d.rho12 == pytest.approx(0.4)


def test_elliptic():
    assert maxcoh.complete_K(0.0) == pytest.approx(math.pi / 2)
    sn, cn = maxcoh.jacobi_sn_cn(0.7, 0.6)
    assert sn * sn + cn * cn == pytest.approx(1.0, abs=1e-14)
    assert maxcoh.incomplete_Pi(1.1, 0.0, 0.5) == pytest.approx(maxcoh.incomplete_F(1.1, 0.5))


def test_closed_form_matches_quadrature_in_regime_a():
    rp = maxcoh.ReducedProblem(0.2, 0.1, 0.01)
    c = maxcoh.closed_form(rp)
    assert c.regime == maxcoh.Regime.A
    exact = maxcoh.ExactSolution(rp)
    quad = maxcoh.ReducedQuadrature(rp)
    for z in np.linspace(0.0, 3.0, 7):
        assert exact.x_of_z(z) == pytest.approx(quad.x_of_z(z), abs=1e-8 * quad.turning_point)


def test_regime_c_stays_below_x3():
    c = maxcoh.closed_form(maxcoh.ReducedProblem(2.0, 0.3, 0.01))
    assert c.regime == maxcoh.Regime.C
    top = abs(c.roots[2])
    assert max(maxcoh.solve(c, z) for z in np.linspace(0, 20, 200)) <= top * (1 + 1e-12)


def test_boundary_raises():
    with pytest.raises(maxcoh.RegimeBoundary):
        maxcoh.roots(1.0, 0.0, 0.01)
    with pytest.raises(maxcoh.Error):
        maxcoh.figure_preset("nope")


def test_grid_and_efficiency():
    cfg = maxcoh.figure_preset("fig7")
    cfg.nz = 40
    cfg.ntau = 40
    g = maxcoh.grid_simulate(cfg)
    assert g["J"].shape == (40, 40)
    assert g["flagged"] == 0
    w = g["W"]
    assert np.all(np.isfinite(w)) and np.all(w >= 0) and np.all(w <= 1)
    assert "fig7" in maxcoh.preset_names()


def test_cli_roundtrip():
    code, out, err = maxcoh.run_cli(["efficiency", "--preset", "fig4", "--grid-nz", "8", "--grid-ntau", "8"])
    assert code == 0, err
    assert out.startswith("# {")
    assert maxcoh.run_cli(["grid", "--preset", "nope"])[0] == 2
