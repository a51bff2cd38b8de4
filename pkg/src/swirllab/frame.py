"""Curve-following boundary chart.

An integral curve phi(thetabar) of the normalized wall shear direction,
its inward-curving normal phi''/|phi''|, and the vertical axis define the
chart (z, rbar, thetabar) -> phi(thetabar) + rbar * normal(thetabar) + z e_z.
The Euclidean metric in these coordinates is diag(1, 1, f^2) with
f = 1 - rbar * kappa(thetabar).
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.interpolate import CubicSpline

from .errors import ChartDomainError, ChartInvalidError, DegenerateFieldError
from .shear import BoundaryShear

Array = np.ndarray


class _ShearDirection:
    """Normalized shear direction as a planar vector field.

    Because the shear is axisymmetric, the Frenet data of its integral
    curves depends on radius alone: with unit direction S(r) e_theta +
    rho(r) e_r the curvature is |g| for g = S' + S/r, the unit normal is
    sign(g) (-S e_r + rho e_theta) and d(kappa)/d(arc) = sign(g) g' rho.
    These closed forms avoid the float64 noise floor that second
    differences of curve positions hit near kappa ~ 1/|y| for small |y|.
    """

    def __init__(self, shear: BoundaryShear, vh_floor: float):
        # half a sample spacing of spline extrapolation is tolerated so that
        # curves through the outermost sampled radii stay integrable
        margin = 0.5 * float(np.diff(shear.r_grid).mean())
        self.r_lo = float(shear.r_grid[0]) - margin
        self.r_hi = float(shear.r_grid[-1]) + margin
        self.a = CubicSpline(shear.r_grid, shear.dzur)
        self.b = CubicSpline(shear.r_grid, shear.dzutheta)
        self.da = self.a.derivative()
        self.db = self.b.derivative()
        self.d2a = self.da.derivative()
        self.d2b = self.db.derivative()
        self.vh_floor = vh_floor

    def _ab(self, r: float) -> tuple[float, float, float]:
        if not (self.r_lo <= r <= self.r_hi):
            raise DegenerateFieldError(
                f"trajectory left the sampled radii: r = {r:g} not in "
                f"[{self.r_lo:g}, {self.r_hi:g}]")
        a, b = float(self.a(r)), float(self.b(r))
        vh = np.hypot(a, b)
        if vh < self.vh_floor:
            raise DegenerateFieldError(f"|v_h| = {vh:g} below threshold at r = {r:g}")
        return a, b, vh

    def __call__(self, x: Array) -> Array:
        r = float(np.hypot(x[0], x[1]))
        a, b, vh = self._ab(r)
        e_r = x / r
        e_t = np.array([-e_r[1], e_r[0]])
        return (a * e_r + b * e_t) / vh

    def frenet(self, x: Array) -> tuple[float, float, Array]:
        """(kappa, dkappa/darc, unit normal) at a point on a trajectory."""
        r = float(np.hypot(x[0], x[1]))
        a, b, vh = self._ab(r)
        S, rho = b / vh, a / vh
        da, db = float(self.da(r)), float(self.db(r))
        d2a, d2b = float(self.d2a(r)), float(self.d2b(r))
        N = a * db - da * b
        dvh = (a * da + b * db) / vh
        dS = a * N / vh**3
        dN = a * d2b - d2a * b
        d2S = (da * N + a * dN) / vh**3 - 3 * a * N * dvh / vh**4
        g = dS + S / r
        dg = d2S + dS / r - S / r**2
        sgn = 1.0 if g >= 0 else -1.0
        e_r = x / r
        e_t = np.array([-e_r[1], e_r[0]])
        normal = sgn * (-S * e_r + rho * e_t)
        return abs(g), sgn * dg * rho, normal


@dataclass(frozen=True)
class CurvilinearFrame:
    y: Array
    thetabar_grid: Array
    phi: Array       # (n, 2) curve points in the boundary plane
    tangent: Array   # (n, 2), equals the normalized shear at phi
    normal: Array    # (n, 2), phi'' / |phi''|
    kappa: Array
    dkappa: Array
    _splines: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        th = self.thetabar_grid
        sp = {
            "phi": CubicSpline(th, self.phi, axis=0),
            "tangent": CubicSpline(th, self.tangent, axis=0),
            "normal": CubicSpline(th, self.normal, axis=0),
            "kappa": CubicSpline(th, self.kappa),
            "dkappa": CubicSpline(th, self.dkappa),
        }
        object.__setattr__(self, "_splines", sp)

    @property
    def delta(self) -> float:
        return float(self.thetabar_grid[-1])

    @property
    def max_kappa(self) -> float:
        return float(self.kappa.max())

    @property
    def rbar_max(self) -> float:
        return 1.0 / self.max_kappa

    def _check_theta(self, thetabar) -> None:
        tb = np.asarray(thetabar, float)
        tol = 1e-12 + 1e-9 * self.delta
        if np.any(np.abs(tb) > self.delta + tol):
            raise ChartDomainError(
                f"thetabar outside sampled arc (+-{self.delta:g})")

    def _check_rbar(self, rbar) -> None:
        rb = np.asarray(rbar, float)
        if np.any(np.abs(rb) >= self.rbar_max):
            raise ChartDomainError(
                f"|rbar| must stay below 1/max(kappa) = {self.rbar_max:g}")

    def kappa_at(self, thetabar):
        self._check_theta(thetabar)
        return self._splines["kappa"](thetabar)

    def dkappa_at(self, thetabar):
        self._check_theta(thetabar)
        return self._splines["dkappa"](thetabar)

    def phi_at(self, thetabar):
        self._check_theta(thetabar)
        return self._splines["phi"](thetabar)

    def tangent_at(self, thetabar):
        self._check_theta(thetabar)
        t = self._splines["tangent"](thetabar)
        return t / np.linalg.norm(t, axis=-1, keepdims=True)

    def normal_at(self, thetabar):
        self._check_theta(thetabar)
        nv = self._splines["normal"](thetabar)
        return nv / np.linalg.norm(nv, axis=-1, keepdims=True)

    def metric_factor(self, rbar, thetabar):
        """f = 1 - rbar * kappa(thetabar)."""
        return 1.0 - np.asarray(rbar, float) * self.kappa_at(thetabar)


def chart(frame: CurvilinearFrame, z, rbar, thetabar) -> Array:
    """Map chart coordinates to Cartesian points, shape (..., 3)."""
    z = np.asarray(z, float)
    rbar = np.asarray(rbar, float)
    thetabar = np.asarray(thetabar, float)
    frame._check_rbar(rbar)
    shape = np.broadcast(z, rbar, thetabar).shape
    tb = np.broadcast_to(thetabar, shape)
    planar = frame.phi_at(tb) + np.broadcast_to(rbar, shape)[..., None] * frame.normal_at(tb)
    out = np.empty(shape + (3,))
    out[..., :2] = planar
    out[..., 2] = np.broadcast_to(z, shape)
    return out


def christoffel(frame: CurvilinearFrame, rbar: float, thetabar: float) -> Array:
    """All Christoffel symbols Gamma[k, i, j] at (rbar, thetabar).

    Index order (0, 1, 2) = (z, rbar, thetabar).  The only nonzero entries
    come from the metric factor: Gamma^rbar_(th,th) = -f df/drbar,
    Gamma^th_(rbar,th) = (df/drbar)/f and Gamma^th_(th,th) = (df/dth)/f.
    """
    kap = float(frame.kappa_at(thetabar))
    dkap = float(frame.dkappa_at(thetabar))
    f = 1.0 - rbar * kap
    if f <= 0:
        raise ChartInvalidError(f"metric factor f = {f:g} <= 0 at rbar = {rbar:g}")
    df_dr = -kap
    df_dt = -rbar * dkap
    g = np.zeros((3, 3, 3))
    g[1, 2, 2] = -f * df_dr
    g[2, 1, 2] = g[2, 2, 1] = df_dr / f
    g[2, 2, 2] = df_dt / f
    return g


def hodge_star_2form(coeffs, rbar, thetabar, frame: CurvilinearFrame) -> Array:
    """Star of c1 dz^drbar + c2 drbar^dth + c3 dth^dz, as (dz, drbar, dth)
    coefficients of the resulting 1-form."""
    c1, c2, c3 = coeffs
    f = float(frame.metric_factor(rbar, thetabar))
    if f <= 0:
        raise ChartInvalidError(f"metric factor f = {f:g} <= 0")
    return np.array([c2 / f, c3 / f, c1 * f])


def hodge_star_1form(coeffs, rbar, thetabar, frame: CurvilinearFrame) -> Array:
    """Star of c1 dz + c2 drbar + c3 dth, as (dz^drbar, drbar^dth, dth^dz)
    coefficients of the resulting 2-form."""
    c1, c2, c3 = coeffs
    f = float(frame.metric_factor(rbar, thetabar))
    if f <= 0:
        raise ChartInvalidError(f"metric factor f = {f:g} <= 0")
    return np.array([c3 / f, c1 * f, c2 * f])


def _rk4_path(direction, y0: Array, h: float, nsteps: int) -> Array:
    pts = np.empty((nsteps + 1, 2))
    pts[0] = y0
    x = np.array(y0, float)
    for k in range(nsteps):
        k1 = direction(x)
        k2 = direction(x + 0.5 * h * k1)
        k3 = direction(x + 0.5 * h * k2)
        k4 = direction(x + h * k3)
        x = x + (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
        pts[k + 1] = x
    return pts


def integrate_curve(shear: BoundaryShear, y, delta: float | None = None,
                    n: int | None = None, vh_floor: float | None = None,
                    kappa_min: float = 1e-8) -> CurvilinearFrame:
    """Trace the normalized shear field through y in both arc directions.

    Fourth-order Runge-Kutta with fixed arc step; curvature and its
    derivative by 4th-order differences of the sampled curve.  When delta
    is omitted it defaults to min(0.5 |y| pi, 0.3 / max kappa), the second
    factor estimated from a short probe run.  The default sample count
    balances rounding noise in the second differences (~ eps |y| / h^2)
    against truncation, which matters for the curvature derivative.
    """
    y = np.asarray(y, float)
    ry = float(np.hypot(y[0], y[1]))
    if ry == 0.0:
        raise DegenerateFieldError("reference point may not sit on the axis")
    if vh_floor is None:
        mx = float(shear.vh_mag.max())
        if mx == 0.0:
            raise DegenerateFieldError("shear is identically zero")
        vh_floor = 1e-9 * mx
    direction = _ShearDirection(shear, vh_floor)

    if delta is None:
        probe = min(0.5 * ry * np.pi, 0.1 * ry)
        probe_frame = integrate_curve(shear, y, delta=probe, n=33,
                                      vh_floor=vh_floor, kappa_min=kappa_min)
        delta = min(0.5 * ry * np.pi, 0.3 / probe_frame.max_kappa)

    if n is None:
        h_target = 5e-4 * (max(ry, 0.05) / 0.1) ** (1.0 / 3.0)
        n = int(np.clip(2 * round(delta / h_target / 2) + 1, 41, 401))
    if n < 9:
        raise ValueError("need at least 9 arc samples")
    n |= 1  # symmetric sampling about thetabar = 0
    half = (n - 1) // 2
    h = delta / half
    fwd = _rk4_path(direction, y, h, half)
    bwd = _rk4_path(direction, y, -h, half)
    phi = np.vstack([bwd[::-1], fwd[1:]])
    th = np.linspace(-delta, delta, n)

    tangent = np.empty_like(phi)
    normal = np.empty_like(phi)
    kappa = np.empty(n)
    dkappa = np.empty(n)
    for k, p in enumerate(phi):
        tangent[k] = direction(p)
        kappa[k], dkappa[k], normal[k] = direction.frenet(p)
    if kappa.min() < kappa_min:
        raise ChartInvalidError(
            f"curvature dropped to {kappa.min():g} (< {kappa_min:g}): "
            "chart normal undefined")
    return CurvilinearFrame(y=y, thetabar_grid=th, phi=phi, tangent=tangent,
                            normal=normal, kappa=kappa, dkappa=dkappa)
