import numpy as np
import pytest

from swirllab import framecalc as fc
from swirllab import frame as fr
from swirllab.errors import PreconditionError
from swirllab.oracle import forced_ns, trig_divfree
from swirllab.verify import frame_transform_oracle, synthetic_shear


@pytest.fixture(scope="module")
def circle():
    return fr.integrate_curve(synthetic_shear(1.0), [0.5, 0.0])


@pytest.fixture(scope="module")
def spiral():
    return fr.integrate_curve(synthetic_shear(0.97), [0.3, 0.0])


def zero_sampler(z, rbar, th):
    shape = np.shape(np.asarray(z, float))
    return np.zeros((3,) + shape)


def const_uz_sampler(z, rbar, th):
    z = np.asarray(z, float)
    out = np.zeros((3,) + z.shape)
    out[0] = 0.7
    return out


def test_divergence_trivials(circle):
    assert fc.divergence_frame(zero_sampler, circle, 0.02, 0.01, 0.0) == pytest.approx(0.0)
    # constant u_z: f does not depend on z, so d_z(u_z f) = 0
    assert fc.divergence_frame(const_uz_sampler, circle, 0.02, 0.01, 0.0) == \
        pytest.approx(0.0, abs=1e-12)


def test_divergence_matches_cartesian(spiral):
    field = trig_divfree()
    sampler = fc.sampler_from_cartesian(field.values, spiral)
    rng = np.random.default_rng(3)
    for _ in range(10):
        p = (float(rng.uniform(0.0, 0.08)),
             float(rng.uniform(-0.3, 0.3) * spiral.rbar_max),
             float(rng.uniform(-0.5, 0.5) * spiral.delta))
        mine = float(fc.divergence_frame(sampler, spiral, *p))
        ref = frame_transform_oracle(field, spiral, "div", p)
        assert mine == pytest.approx(ref, abs=1e-6)


def test_laplacian_trivial_zero(circle):
    out = fc.laplacian_frame(zero_sampler, circle, 0.03, 0.0, 0.0)
    assert np.abs(out).max() == pytest.approx(0.0)


def test_laplacian_quadratic_swirl(circle):
    # u_thetabar = z^2 around a circle of curvature kappa: the tangential
    # component of the vector Laplacian is 2 - kappa^2 z^2 / f^2
    kap = 2.0

    def samp(z, rbar, th):
        z = np.asarray(z, float)
        out = np.zeros((3,) + z.shape)
        out[2] = z**2
        return out

    out = fc.laplacian_frame(samp, circle, 0.0, 0.0, 0.0)
    assert np.allclose(out.ravel(), [0.0, 0.0, 2.0], atol=1e-7)
    zq, rq = 0.04, 0.03
    fq = 1 - rq * kap
    out2 = fc.laplacian_frame(samp, circle, zq, rq, 0.0)
    assert out2[2] == pytest.approx(2 - kap**2 * zq**2 / fq**2, abs=1e-7)
    assert abs(out2[0]) < 1e-7 and abs(out2[1]) < 1e-7


def test_laplacian_requires_divergence_free(circle):
    def samp(z, rbar, th):  # u_z = z: divergence 1
        z = np.asarray(z, float)
        out = np.zeros((3,) + z.shape)
        out[0] = z
        return out

    with pytest.raises(PreconditionError) as err:
        fc.laplacian_frame(samp, circle, 0.05, 0.0, 0.0)
    assert err.value.measured == pytest.approx(1.0, rel=1e-6)


def test_laplacian_matches_cartesian(spiral):
    field = forced_ns()
    sampler = fc.sampler_from_cartesian(field.values, spiral)
    p = (0.03, 0.02, 0.05)
    mine = fc.laplacian_frame(sampler, spiral, *p).ravel()
    ref = frame_transform_oracle(field, spiral, "laplacian", p)
    assert np.abs(mine - ref).max() < 1e-5 * max(1, np.abs(ref).max())


def test_covariant_trivial_zero(circle):
    out = fc.covariant_derivative_frame(zero_sampler, circle, 0.02, 0.0, 0.0)
    assert np.abs(out).max() == 0.0


def test_covariant_constant_swirl_is_centripetal(circle):
    # u = c along the tangential co-vector: the inward-normal component of
    # (u.grad)u is +kappa c^2 at the origin
    c, kap = 0.8, 2.0

    def samp(z, rbar, th):
        shape = np.shape(np.asarray(z, float))
        out = np.zeros((3,) + shape)
        out[2] = c
        return out

    out = fc.covariant_derivative_frame(samp, circle, 0.0, 0.0, 0.0)
    assert out[1] == pytest.approx(kap * c * c, rel=1e-9)
    assert abs(out[0]) < 1e-12 and abs(out[2]) < 1e-9


def test_covariant_matches_cartesian(spiral):
    field = trig_divfree()
    sampler = fc.sampler_from_cartesian(field.values, spiral)
    p = (0.04, -0.02, -0.03)
    mine = fc.covariant_derivative_frame(sampler, spiral, *p)
    ref = frame_transform_oracle(field, spiral, "advection", p)
    assert np.abs(mine - ref).max() < 1e-5 * max(1, np.abs(ref).max())


def test_boundary_identities_zero_field(circle):
    out = fc.boundary_identities(zero_sampler, circle)
    assert np.abs(out).max() == 0.0


def test_boundary_identities_noslip_precondition(circle):
    def samp(z, rbar, th):  # nonzero on the wall
        shape = np.shape(np.asarray(z, float))
        return np.full((3,) + shape, 0.5)

    with pytest.raises(PreconditionError):
        fc.boundary_identities(samp, circle)


def test_boundary_identities_cross_check_full_laplacian(spiral):
    """Each boundary quantity equals the corresponding derivative of the
    full laplacian output (internal two-route check)."""
    field = forced_ns()
    sampler = fc.sampler_from_cartesian(field.values, spiral)
    qs = fc.boundary_identities(sampler, spiral)
    h = 1e-3
    fwd = np.array([-25.0, 48.0, -36.0, 16.0, -3.0]) / (12 * h)
    cen = np.array([1.0, -8.0, 8.0, -1.0]) / (12 * h)
    lap = lambda z, rb, tb: fc.laplacian_frame(sampler, spiral, z, rb, tb).ravel()
    dz_lap = sum(w * lap(k * h, 0.0, 0.0) for k, w in enumerate(fwd))
    assert qs[0] == pytest.approx(dz_lap[1], abs=2e-5 * max(1, abs(dz_lap[1])))
    assert qs[1] == pytest.approx(dz_lap[2], abs=2e-5 * max(1, abs(dz_lap[2])))
    dr_lap = sum(w * lap(0.0, o * h, 0.0)[0]
                 for o, w in zip((-2, -1, 1, 2), cen))
    dt_lap = sum(w * lap(0.0, 0.0, o * h)[0]
                 for o, w in zip((-2, -1, 1, 2), cen))
    assert qs[2] == pytest.approx(dr_lap, abs=2e-5 * max(1, abs(dr_lap)))
    assert qs[3] == pytest.approx(dt_lap, abs=2e-5 * max(1, abs(dt_lap)))


def test_boundary_identity_q4_direct_formula(spiral):
    """d_th g(Lap u, e1) at the origin reduces to
    -(d_th d_rbar((d_z u_rbar) f) + d_th^2 d_z u_thetabar) for no-slip
    divergence-free fields (sign fixed by the Cartesian oracle)."""
    from swirllab.stencils import AXIS_RBAR, AXIS_THETA, AXIS_Z, fd, fd_cross

    field = trig_divfree()
    sampler = fc.sampler_from_cartesian(field.values, spiral)
    h = 1e-3
    f = spiral.metric_factor
    dzur_f = lambda Z, R, T: fd(lambda z, r, t: sampler(z, r, t)[1],
                                Z, R, T, AXIS_Z, h) * f(R, T)
    dzut = lambda Z, R, T: fd(lambda z, r, t: sampler(z, r, t)[2],
                              Z, R, T, AXIS_Z, h)
    rhs = -(fd_cross(dzur_f, 0.0, 0.0, 0.0, AXIS_THETA, AXIS_RBAR, h)
            + fd(dzut, 0.0, 0.0, 0.0, AXIS_THETA, h, 2))
    q4 = fc.boundary_identities(sampler, spiral)[3]
    assert q4 == pytest.approx(float(rhs), rel=1e-9)


def test_pressure_mixed_partials_commute(circle, spiral):
    field = forced_ns()
    for frame in (circle, spiral):
        p_sampler = lambda Z, R, T: field.pressure_values(
            fr.chart(frame, Z, R, T).reshape(-1, 3))
        v1, v2 = fc.pressure_mixed_partials(p_sampler, frame)
        assert v1 == pytest.approx(v2, abs=1e-8)
