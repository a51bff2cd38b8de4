"""Differential operators evaluated in the curve-following chart.

A *sampler* is a callable (z, rbar, thetabar) -> (3, N) array giving the
orthonormal co-basis components (u_z, u_rbar, u_thetabar) of the field,
i.e. the coefficients of u = u_z dz + u_rbar drbar + u_thetabar f dth.
All derivatives are 4th-order finite differences in chart coordinates;
z-stencils become one-sided at the boundary, where fields only exist for
z >= 0.

The Laplacian is assembled from the exterior-calculus pipeline for
divergence-free fields: star d star d u equals curl(curl u), which is the
*negative* of the vector Laplacian, so the components below carry the
corresponding sign to return the actual vector Laplacian.
"""
from __future__ import annotations

from typing import Callable

import numpy as np
from scipy.interpolate import RectBivariateSpline

from .errors import PreconditionError
from .field import AxisymField
from .frame import CurvilinearFrame, chart, christoffel
from .stencils import AXIS_RBAR, AXIS_THETA, AXIS_Z, fd, fd_cross

Sampler = Callable[[np.ndarray, np.ndarray, np.ndarray], np.ndarray]


def _comp(sampler: Sampler, k: int):
    return lambda z, r, t: sampler(z, r, t)[k]


def divergence_frame(sampler: Sampler, frame: CurvilinearFrame,
                     z, rbar, thetabar, h: float = 1e-3):
    """(1/f) [d_z(u_z f) + d_rbar(u_rbar f) + d_th(u_th)]."""
    f = frame.metric_factor
    uzf = lambda Z, R, T: sampler(Z, R, T)[0] * f(R, T)
    urf = lambda Z, R, T: sampler(Z, R, T)[1] * f(R, T)
    total = (fd(uzf, z, rbar, thetabar, AXIS_Z, h)
             + fd(urf, z, rbar, thetabar, AXIS_RBAR, h)
             + fd(_comp(sampler, 2), z, rbar, thetabar, AXIS_THETA, h))
    return total / f(rbar, thetabar)


def _curl_components(sampler: Sampler, frame: CurvilinearFrame):
    """The three coefficient functions of star(du) on (dz, drbar, dth)."""
    f = frame.metric_factor
    uz, ur, ut = (_comp(sampler, k) for k in range(3))
    utf = lambda Z, R, T: ut(Z, R, T) * f(R, T)

    def on_dz(Z, R, T, h):
        return (fd(utf, Z, R, T, AXIS_RBAR, h)
                - fd(ur, Z, R, T, AXIS_THETA, h)) / f(R, T)

    def on_drbar(Z, R, T, h):
        return (fd(uz, Z, R, T, AXIS_THETA, h) / f(R, T)
                - fd(ut, Z, R, T, AXIS_Z, h))

    def on_dth(Z, R, T, h):
        return (fd(ur, Z, R, T, AXIS_Z, h)
                - fd(uz, Z, R, T, AXIS_RBAR, h)) * f(R, T)

    return on_dz, on_drbar, on_dth


def laplacian_frame(sampler: Sampler, frame: CurvilinearFrame,
                    z, rbar, thetabar, h: float = 1e-3,
                    div_tol: float = 1e-8) -> np.ndarray:
    """Vector Laplacian components on (e1, e2, e3) = (dz, drbar, f dth).

    Valid for divergence-free fields only (the assembly drops the grad-div
    part); the measured frame divergence must stay below div_tol.
    """
    div = np.max(np.abs(divergence_frame(sampler, frame, z, rbar, thetabar, h)))
    if div > div_tol:
        raise PreconditionError(
            f"field is not divergence-free at the requested point "
            f"(measured {div:g} > {div_tol:g})", measured=float(div))
    A, B, C = _curl_components(sampler, frame)
    Af = lambda Z, R, T: A(Z, R, T, h)
    Bf = lambda Z, R, T: B(Z, R, T, h)
    Cf = lambda Z, R, T: C(Z, R, T, h)
    f0 = frame.metric_factor(rbar, thetabar)
    comp1 = -(fd(Cf, z, rbar, thetabar, AXIS_RBAR, h)
              - fd(Bf, z, rbar, thetabar, AXIS_THETA, h)) / f0
    comp2 = -(fd(Af, z, rbar, thetabar, AXIS_THETA, h)
              - fd(Cf, z, rbar, thetabar, AXIS_Z, h)) / f0
    comp3 = -(fd(Bf, z, rbar, thetabar, AXIS_Z, h)
              - fd(Af, z, rbar, thetabar, AXIS_RBAR, h))
    return np.stack([np.asarray(comp1), np.asarray(comp2), np.asarray(comp3)])


def covariant_derivative_frame(sampler: Sampler, frame: CurvilinearFrame,
                               z: float, rbar: float, thetabar: float,
                               h: float = 1e-3) -> np.ndarray:
    """g(nabla_u u, e_k) for k = 1..3 at one chart point."""
    f0 = float(frame.metric_factor(rbar, thetabar))
    gam = christoffel(frame, rbar, thetabar)
    u = np.asarray(sampler(np.atleast_1d(float(z)), np.atleast_1d(float(rbar)),
                           np.atleast_1d(float(thetabar)))).reshape(3)
    contra = np.array([u[0], u[1], u[2] / f0])

    f = frame.metric_factor
    comp_fns = [
        _comp(sampler, 0),
        _comp(sampler, 1),
        lambda Z, R, T: sampler(Z, R, T)[2] / f(R, T),
    ]
    grad = np.empty((3, 3))  # grad[i, k] = d_i u^k
    for i, axis in enumerate((AXIS_Z, AXIS_RBAR, AXIS_THETA)):
        for k in range(3):
            grad[i, k] = fd(comp_fns[k], float(z), float(rbar), float(thetabar),
                            axis, h)
    out = contra @ grad + np.einsum("kij,i,j->k", gam, contra, contra)
    return np.array([out[0], out[1], f0 * out[2]])


def boundary_identities(sampler: Sampler, frame: CurvilinearFrame,
                        h: float = 1e-3, noslip_tol: float = 1e-8,
                        div_tol: float = 1e-8) -> np.ndarray:
    """The four boundary quantities at the chart origin:

    d_z g(Lap u, e2), d_z g(Lap u, e3), d_rbar g(Lap u, e1),
    d_th g(Lap u, e1), each evaluated with the no-slip simplifications
    (u and its tangential derivatives vanish on z = 0).  Like the
    Laplacian itself, the reductions assume a divergence-free field.
    """
    ztest = np.zeros(25)
    off = np.linspace(-2 * h, 2 * h, 5)
    rr, tt = (g.ravel() for g in np.meshgrid(off, off, indexing="ij"))
    worst = float(np.abs(sampler(ztest, rr, tt)).max())
    if worst > noslip_tol:
        raise PreconditionError(
            f"no-slip violated on the boundary: max |u| = {worst:g}",
            measured=worst)
    div = float(np.max(np.abs(divergence_frame(
        sampler, frame, np.full(3, 3 * h), np.zeros(3), np.array([-h, 0.0, h]), h))))
    if div > div_tol:
        raise PreconditionError(
            f"field is not divergence-free near the boundary "
            f"(measured {div:g} > {div_tol:g})", measured=div)

    f = frame.metric_factor
    uz, ur, ut = (_comp(sampler, k) for k in range(3))
    utf = lambda Z, R, T: ut(Z, R, T) * f(R, T)
    dzut = lambda Z, R, T: fd(ut, Z, R, T, AXIS_Z, h)
    dzut_f = lambda Z, R, T: dzut(Z, R, T) * f(R, T)
    dzur = lambda Z, R, T: fd(ur, Z, R, T, AXIS_Z, h)
    dzur_f = lambda Z, R, T: dzur(Z, R, T) * f(R, T)
    o = 0.0
    kap0 = float(frame.kappa_at(0.0))
    df_dr = -kap0

    q1 = -(fd_cross(dzut_f, o, o, o, AXIS_RBAR, AXIS_THETA, h)
           - fd(dzur, o, o, o, AXIS_THETA, h, 2)
           + fd(lambda Z, R, T: fd(uz, Z, R, T, AXIS_RBAR, h)
                - fd(ur, Z, R, T, AXIS_Z, h),
                o, o, o, AXIS_Z, h, 2))

    inner2 = lambda Z, R, T: (fd(uz, Z, R, T, AXIS_THETA, h)
                              - dzut_f(Z, R, T))
    mid2 = lambda Z, R, T: (fd_cross(ur, Z, R, T, AXIS_RBAR, AXIS_THETA, h)
                            - fd(utf, Z, R, T, AXIS_RBAR, h, 2))
    last2 = lambda Z, R, T: (fd(utf, Z, R, T, AXIS_RBAR, h)
                             - fd(ur, Z, R, T, AXIS_THETA, h))
    q2 = -(fd(inner2, o, o, o, AXIS_Z, h, 2)
           + fd(mid2, o, o, o, AXIS_Z, h)
           + df_dr * fd(last2, o, o, o, AXIS_Z, h))

    q3 = -(fd(dzur_f, o, o, o, AXIS_RBAR, h, 2)
           + fd_cross(dzut, o, o, o, AXIS_RBAR, AXIS_THETA, h)
           - (fd(dzur_f, o, o, o, AXIS_RBAR, h)
              + fd(dzut, o, o, o, AXIS_THETA, h)) * df_dr)

    q4 = -(fd_cross(dzur_f, o, o, o, AXIS_THETA, AXIS_RBAR, h)
           + fd(dzut, o, o, o, AXIS_THETA, h, 2))

    return np.array([float(q1), float(q2), float(q3), float(q4)])


def pressure_mixed_partials(p_sampler, frame: CurvilinearFrame,
                            h: float = 1e-3) -> tuple[float, float]:
    """d_z g(grad p, e3) at the origin, computed two ways.

    Returns ((1/f) d_z d_th p, d_th d_z p); mixed partials commute, so both
    must agree to rounding plus truncation.
    """
    f0 = float(frame.metric_factor(0.0, 0.0))
    o = 0.0
    v1 = fd(lambda Z, R, T: fd(p_sampler, Z, R, T, AXIS_THETA, h),
            o, o, o, AXIS_Z, h) / f0
    v2 = fd(lambda Z, R, T: fd(p_sampler, Z, R, T, AXIS_Z, h),
            o, o, o, AXIS_THETA, h)
    return float(v1), float(v2)


# ---------------------------------------------------------------------------
# sampler constructors


def sampler_from_cartesian(u_cart: Callable[[np.ndarray], np.ndarray],
                           frame: CurvilinearFrame) -> Sampler:
    """Wrap a Cartesian vector field u(points (N,3)) -> (N,3) as a sampler."""

    def sampler(z, rbar, thetabar):
        z = np.atleast_1d(np.asarray(z, float))
        rbar = np.atleast_1d(np.asarray(rbar, float))
        thetabar = np.atleast_1d(np.asarray(thetabar, float))
        pts = chart(frame, z, rbar, thetabar)
        vals = np.asarray(u_cart(pts.reshape(-1, 3)), float).reshape(pts.shape)
        tb = np.broadcast_to(thetabar, pts.shape[:-1])
        tv = frame.tangent_at(tb)
        nv = frame.normal_at(tb)
        u1 = vals[..., 2]
        u2 = (vals[..., :2] * nv).sum(axis=-1)
        u3 = (vals[..., :2] * tv).sum(axis=-1)
        return np.stack([u1, u2, u3])

    return sampler


def sampler_from_axisym(field: AxisymField, frame: CurvilinearFrame,
                        spline_order: int = 3) -> Sampler:
    """Bicubic interpolation of an axisymmetric snapshot, rotated to 3D and
    projected onto the frame."""
    k = spline_order
    spl = {
        "u_r": RectBivariateSpline(field.r, field.z, field.u_r, kx=k, ky=k),
        "u_t": RectBivariateSpline(field.r, field.z, field.u_theta, kx=k, ky=k),
        "u_z": RectBivariateSpline(field.r, field.z, field.u_z, kx=k, ky=k),
    }

    def u_cart(pts: np.ndarray) -> np.ndarray:
        x, y, zz = pts[:, 0], pts[:, 1], pts[:, 2]
        rr = np.hypot(x, y)
        ur = spl["u_r"].ev(rr, zz)
        ut = spl["u_t"].ev(rr, zz)
        uz = spl["u_z"].ev(rr, zz)
        with np.errstate(invalid="ignore", divide="ignore"):
            cx = np.where(rr > 0, x / rr, 1.0)
            cy = np.where(rr > 0, y / rr, 0.0)
        out = np.empty_like(pts)
        out[:, 0] = ur * cx - ut * cy
        out[:, 1] = ur * cy + ut * cx
        out[:, 2] = uz
        return out

    return sampler_from_cartesian(u_cart, frame)
