import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.interpolate import CubicSpline

from swirllab import frame as fr
from swirllab.errors import ChartDomainError, ChartInvalidError, DegenerateFieldError
from swirllab.shear import BoundaryShear
from swirllab.verify import christoffel_metric_oracle, synthetic_shear


def circle_frame(R, **kw):
    return fr.integrate_curve(synthetic_shear(1.0, r_lo=0.02), [R, 0.0], **kw)


@pytest.mark.parametrize("R", [0.05, 0.1, 0.5])
def test_pure_swirl_traces_circle(R):
    f = circle_frame(R)
    assert np.abs(f.kappa - 1.0 / R).max() < 1e-6
    assert np.abs(f.dkappa).max() < 1e-6 / R
    radii = np.hypot(f.phi[:, 0], f.phi[:, 1])
    assert np.abs(radii - R).max() < 1e-9


def test_generator_is_unit_speed():
    f = fr.integrate_curve(synthetic_shear(0.97), [0.3, 0.0])
    assert np.abs(np.linalg.norm(f.tangent, axis=1) - 1).max() < 1e-8


def test_base_point_anchored():
    f = fr.integrate_curve(synthetic_shear(0.99), [0.25, 0.0])
    assert np.allclose(f.phi_at(0.0), [0.25, 0.0], atol=1e-12)


def test_constant_s_spiral_self_convergence():
    sh = synthetic_shear(0.97)
    f1 = fr.integrate_curve(sh, [0.3, 0.0], n=201)
    f2 = fr.integrate_curve(sh, [0.3, 0.0], delta=f1.delta, n=2001)
    ref = CubicSpline(f2.thetabar_grid, f2.phi, axis=0)(f1.thetabar_grid)
    assert np.abs(f1.phi - ref).max() <= 1e-8


def test_chart_base_cases():
    R = 0.5
    f = circle_frame(R)
    assert np.allclose(fr.chart(f, 0.0, 0.0, 0.0), [R, 0.0, 0.0], atol=1e-12)
    assert np.allclose(fr.chart(f, 0.37, 0.0, 0.0), [R, 0.0, 0.37], atol=1e-12)
    # inward normal: positive rbar moves toward the axis
    pt = fr.chart(f, 0.0, 0.1, 0.0)
    assert np.hypot(pt[0], pt[1]) == pytest.approx(R - 0.1, abs=1e-9)


def test_chart_domain_errors():
    f = circle_frame(0.5)
    with pytest.raises(ChartDomainError):
        fr.chart(f, 0.0, 0.0, 2 * f.delta)
    with pytest.raises(ChartDomainError):
        fr.chart(f, 0.0, 1.2 * f.rbar_max, 0.0)


def test_curve_needs_nonzero_reference():
    with pytest.raises(DegenerateFieldError):
        fr.integrate_curve(synthetic_shear(1.0), [0.0, 0.0])


def test_degenerate_shear_rejected():
    r = np.linspace(0.05, 1.0, 50)
    sh = BoundaryShear(r_grid=r, dzur=np.zeros(50), dzutheta=np.zeros(50))
    with pytest.raises(DegenerateFieldError):
        fr.integrate_curve(sh, [0.3, 0.0])


def test_straight_field_has_no_chart():
    # constant-direction shear: kappa = 0, the normal is undefined
    r = np.linspace(0.05, 2.0, 80)
    sh = BoundaryShear(r_grid=r, dzur=np.ones(80), dzutheta=np.zeros(80))
    with pytest.raises((ChartInvalidError, DegenerateFieldError)):
        fr.integrate_curve(sh, [1.0, 0.0], delta=0.05)


def test_christoffel_at_origin():
    f = circle_frame(0.5)
    kap = 2.0
    g = fr.christoffel(f, 0.0, 0.0)
    assert g[1, 2, 2] == pytest.approx(kap, rel=1e-8)
    assert g[2, 1, 2] == pytest.approx(-kap, rel=1e-8)
    assert g[2, 2, 1] == g[2, 1, 2]
    assert g[2, 2, 2] == pytest.approx(0.0, abs=1e-6)
    # all other entries vanish identically
    mask = np.ones((3, 3, 3), bool)
    mask[1, 2, 2] = mask[2, 1, 2] = mask[2, 2, 1] = mask[2, 2, 2] = False
    assert np.abs(g[mask]).max() == 0.0


def test_christoffel_flat_limit():
    # vanishing curvature limit via a synthetic frame with tiny kappa
    th = np.linspace(-0.3, 0.3, 31)
    kap = np.full(31, 1e-12)
    f = fr.CurvilinearFrame(
        y=np.array([1.0, 0.0]), thetabar_grid=th,
        phi=np.column_stack([np.ones(31), th]),
        tangent=np.column_stack([np.zeros(31), np.ones(31)]),
        normal=np.column_stack([np.ones(31), np.zeros(31)]),
        kappa=kap, dkappa=np.zeros(31))
    g = fr.christoffel(f, 0.05, 0.1)
    assert np.abs(g).max() < 1e-11


def test_christoffel_matches_metric_oracle():
    f = fr.integrate_curve(synthetic_shear(0.97), [0.35, 0.0])
    rng = np.random.default_rng(7)
    for _ in range(20):
        rb = float(rng.uniform(-0.4, 0.4) * f.rbar_max)
        tb = float(rng.uniform(-0.6, 0.6) * f.delta)
        mine = fr.christoffel(f, rb, tb)
        ref = christoffel_metric_oracle(f, rb, tb)
        assert np.abs(mine - ref).max() < 1e-7


def test_christoffel_rejects_invalid_chart():
    f = circle_frame(0.5)
    with pytest.raises(ChartInvalidError):
        fr.christoffel(f, 0.6, 0.0)  # f = 1 - 0.6*2 < 0


def test_hodge_table():
    f = circle_frame(0.5)
    # at the origin f = 1
    assert np.allclose(fr.hodge_star_2form([1, 0, 0], 0.0, 0.0, f), [0, 0, 1])
    assert np.allclose(fr.hodge_star_2form([0, 1, 0], 0.0, 0.0, f), [1, 0, 0])
    assert np.allclose(fr.hodge_star_2form([0, 0, 1], 0.0, 0.0, f), [0, 1, 0])
    # generic factor f = 1 - 0.1 * 2 = 0.8: coefficient 1/f = 1.25 on dz
    out = fr.hodge_star_2form([0, 1, 0], 0.1, 0.0, f)
    assert out[0] == pytest.approx(1.25, rel=1e-7)


_HODGE_FRAME = circle_frame(0.5)


@settings(max_examples=25, deadline=None)
@given(c=st.tuples(*[st.floats(-3, 3) for _ in range(3)]),
       rb=st.floats(-0.3, 0.3), tb=st.floats(-0.1, 0.1))
def test_hodge_double_application_is_identity(c, rb, tb):
    c = np.array(c)
    back = fr.hodge_star_1form(fr.hodge_star_2form(c, rb, tb, _HODGE_FRAME),
                               rb, tb, _HODGE_FRAME)
    assert np.abs(back - c).max() < 1e-12
