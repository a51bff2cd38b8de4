"""Time integrator for the axisymmetric Navier-Stokes system with swirl.

The meridional flow is advanced in streamfunction-vorticity variables
(u_theta and omega_theta step explicitly, psi solves E^2 psi = -r omega
each stage), which makes the centered discrete divergence of the derived
(u_r, u_z) vanish identically: the mixed difference operators commute, so
the divergence constraint holds to rounding at every interior node.
Pressure is recovered per snapshot from a cylindrical Poisson solve.

Boundary conditions: no-slip wall at z = 0 (wall vorticity by a Woods-type
second-order closure), axis parity at r = 0, stress-free no-penetration on
the top and outer boundaries.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.linalg import splu

from .config import SimConfig
from .errors import BlowUpError, ConfigurationError, StencilError
from .field import AxisymField
from .shear import BoundaryShear

Array = np.ndarray
FieldFn = Callable[[float, Array, Array], Array]  # (t, R, Z) -> array on the grid


@dataclass(frozen=True)
class Forcing:
    """Momentum source term sampled on the grid (used by manufactured tests)."""
    f_r: FieldFn
    f_theta: FieldFn
    f_z: FieldFn


# ---------------------------------------------------------------------------
# cached sparse operators

_OPCACHE: dict[tuple, dict] = {}


def _grid_ops(nr: int, nz: int, dr: float, dz: float) -> dict:
    key = (nr, nz, dr, dz)
    ops = _OPCACHE.get(key)
    if ops is None:
        ops = {
            "stream": _assemble_stream(nr, nz, dr, dz),
            "pressure": _assemble_pressure(nr, nz, dr, dz),
        }
        if len(_OPCACHE) > 6:
            _OPCACHE.pop(next(iter(_OPCACHE)))
        _OPCACHE[key] = ops
    return ops


def _assemble_stream(nr, nz, dr, dz):
    """LU of the E^2 operator on interior nodes, Dirichlet psi = 0 on all
    boundaries.

    Radial part in conservative form r d_r((1/r) d_r psi) through half-node
    fluxes: exact on the r^2 and r^4 modes, which keeps the axis column
    second-order (the naive centered form loses an order there).
    """
    ni, nj = nr - 2, nz - 2
    n = ni * nj
    r = np.arange(1, nr - 1) * dr
    cr2, cz2 = 1.0 / dr**2, 1.0 / dz**2
    ii, jj = np.meshgrid(np.arange(ni), np.arange(nj), indexing="ij")
    k = (ii * nj + jj).ravel()
    ri = r[ii.ravel()]
    ce = cr2 * ri / (ri + dr / 2)
    cw = cr2 * ri / (ri - dr / 2)
    rows, cols, vals = [k], [k], [-(ce + cw) - 2 * cz2]

    def add(mask, col, val):
        rows.append(k[mask])
        cols.append(col[mask])
        vals.append(val[mask] if isinstance(val, np.ndarray) else np.full(mask.sum(), val))

    east = ii.ravel() + 1 < ni
    add(east, k + nj, ce)
    west = ii.ravel() - 1 >= 0
    add(west, k - nj, cw)
    north = jj.ravel() + 1 < nj
    add(north, k + 1, cz2)
    south = jj.ravel() - 1 >= 0
    add(south, k - 1, cz2)
    A = coo_matrix((np.concatenate(vals), (np.concatenate(rows), np.concatenate(cols))),
                   shape=(n, n))
    return splu(A.tocsc())


def _assemble_pressure(nr, nz, dr, dz):
    """LU of the cylindrical Laplacian with Neumann ghosts on every side and
    p pinned at node (0, 0); pressure output is diagnostic."""
    n = nr * nz
    cr2, cz2 = 1.0 / dr**2, 1.0 / dz**2
    rows, cols, vals = [], [], []

    def add(r_, c_, v_):
        rows.append(np.atleast_1d(r_))
        cols.append(np.atleast_1d(c_))
        vals.append(np.broadcast_to(np.asarray(v_, float), np.atleast_1d(r_).shape))

    ii, jj = np.meshgrid(np.arange(nr), np.arange(nz), indexing="ij")
    ii, jj = ii.ravel(), jj.ravel()
    k = ii * nz + jj
    pin = (ii == 0) & (jj == 0)
    diag = np.zeros(n)

    axis = (ii == 0) & ~pin
    add(k[axis], k[axis] + nz, 4 * cr2)
    diag[axis] -= 4 * cr2
    inner = ii >= 1
    ri = np.where(inner, ii, 1) * dr
    ce = cr2 + 1.0 / (2 * dr * ri)
    cw = cr2 - 1.0 / (2 * dr * ri)
    diag[inner] -= 2 * cr2
    outer = ii == nr - 1
    mid_r = inner & ~outer
    add(k[mid_r], k[mid_r] + nz, ce[mid_r])
    add(k[mid_r], k[mid_r] - nz, cw[mid_r])
    add(k[outer], k[outer] - nz, ce[outer] + cw[outer])  # ghost p[nr] = p[nr-2] + 2 dr g

    diag[~pin] -= 2 * cz2
    wall = (jj == 0) & ~pin
    top = jj == nz - 1
    mid_z = (~wall) & (~top) & ~pin
    add(k[wall], k[wall] + 1, 2 * cz2)  # ghost p[,-1] = p[,1] - 2 dz g
    add(k[top], k[top] - 1, 2 * cz2)
    add(k[mid_z], k[mid_z] + 1, cz2)
    add(k[mid_z], k[mid_z] - 1, cz2)

    diag[pin] = 1.0
    add(k, k, diag)
    A = coo_matrix((np.concatenate(vals), (np.concatenate(rows), np.concatenate(cols))),
                   shape=(n, n))
    return splu(A.tocsc())


# ---------------------------------------------------------------------------
# stream function / velocity / vorticity plumbing


def _solve_psi(omega: Array, r: Array, ops, nr, nz) -> Array:
    rhs = -(r[1:-1, None] * omega[1:-1, 1:-1]).ravel()
    psi = np.zeros((nr, nz))
    psi[1:-1, 1:-1] = ops["stream"].solve(rhs).reshape(nr - 2, nz - 2)
    return psi


def _velocities(psi: Array, r: Array, dr: float, dz: float) -> tuple[Array, Array]:
    nr, nz = psi.shape
    u_r = np.zeros_like(psi)
    u_z = np.zeros_like(psi)
    u_r[1:-1, 1:-1] = -(psi[1:-1, 2:] - psi[1:-1, :-2]) / (2 * dz * r[1:-1, None])
    u_r[:, -1] = (4 * u_r[:, -2] - u_r[:, -3]) / 3  # stress-free top
    u_r[0, :] = 0.0
    u_r[-1, :] = 0.0
    u_r[:, 0] = 0.0
    u_z[1:-1, :] = (psi[2:, :] - psi[:-2, :]) / (2 * dr * r[1:-1, None])
    u_z[0, :] = (4 * u_z[1, :] - u_z[2, :]) / 3  # axis: one-sided d_r u_z = 0
    u_z[-1, :] = (4 * u_z[-2, :] - u_z[-3, :]) / 3  # stress-free outer
    return u_r, u_z


def _wall_vorticity(psi: Array, omega: Array, r: Array, dr: float, dz: float) -> Array:
    """Woods-type closure for omega on the no-slip wall row (interior radii)."""
    ri = r[1:-1]
    psi1 = psi[1:-1, 1]
    radial = (ri / dr**2) * ((psi[2:, 1] - psi1) / (ri + dr / 2)
                             - (psi1 - psi[:-2, 1]) / (ri - dr / 2))
    w1 = -ri * omega[1:-1, 1] - radial
    return -3 * psi1 / (ri * dz**2) + w1 / (2 * ri)


def _curl_of_velocity(u_r: Array, u_z: Array, dr: float, dz: float) -> Array:
    """omega_theta = d_z u_r - d_r u_z with one-sided wall values."""
    nr, nz = u_r.shape
    om = np.zeros((nr, nz))
    om[1:-1, 1:-1] = ((u_r[1:-1, 2:] - u_r[1:-1, :-2]) / (2 * dz)
                      - (u_z[2:, 1:-1] - u_z[:-2, 1:-1]) / (2 * dr))
    om[1:-1, 0] = (-3 * u_r[1:-1, 0] + 4 * u_r[1:-1, 1] - u_r[1:-1, 2]) / (2 * dz) \
        - (u_z[2:, 0] - u_z[:-2, 0]) / (2 * dr)
    return om


def _apply_utheta_bcs(ut: Array) -> Array:
    ut[:, 0] = 0.0   # no-slip wall
    ut[0, :] = 0.0   # axis
    ut[:, -1] = (4 * ut[:, -2] - ut[:, -3]) / 3  # stress-free top
    ut[-1, :] = (4 * ut[-2, :] - ut[-3, :]) / 3  # stress-free outer
    return ut


def _interior_rhs(u_r, u_t, u_z, om, nu, r, dr, dz, fr_full, ft_int, fz_full):
    """RHS of the u_theta and omega equations on the interior block.

    fr_full / fz_full are full-grid forcing arrays (their curl feeds the
    vorticity equation); ft_int is already sliced to the interior block.
    """
    ri = r[1:-1, None]
    uri = u_r[1:-1, 1:-1]
    uzi = u_z[1:-1, 1:-1]

    def adv(q):
        return (uri * (q[2:, 1:-1] - q[:-2, 1:-1]) / (2 * dr)
                + uzi * (q[1:-1, 2:] - q[1:-1, :-2]) / (2 * dz))

    rfull = r[:, None]

    def lap_swirl(q):
        # (d_rr + (1/r) d_r - 1/r^2) q = d_r((1/r) d_r(r q)), half-node fluxes
        rq = rfull * q
        radial = ((rq[2:, 1:-1] - rq[1:-1, 1:-1]) / (ri + dr / 2)
                  - (rq[1:-1, 1:-1] - rq[:-2, 1:-1]) / (ri - dr / 2)) / dr**2
        return radial + (q[1:-1, 2:] - 2 * q[1:-1, 1:-1] + q[1:-1, :-2]) / dz**2

    uti = u_t[1:-1, 1:-1]
    omi = om[1:-1, 1:-1]
    rhs_t = -adv(u_t) - uri * uti / ri + nu * lap_swirl(u_t)
    swirl_src = (u_t[1:-1, 2:] ** 2 - u_t[1:-1, :-2] ** 2) / (2 * dz * ri)
    rhs_om = -adv(om) + uri * omi / ri + swirl_src + nu * lap_swirl(om)
    if ft_int is not None:
        rhs_t = rhs_t + ft_int
    if fr_full is not None:
        # curl of the meridional forcing enters the vorticity equation
        rhs_om = rhs_om + ((fr_full[1:-1, 2:] - fr_full[1:-1, :-2]) / (2 * dz)
                           - (fz_full[2:, 1:-1] - fz_full[:-2, 1:-1]) / (2 * dr))
    return rhs_t, rhs_om


def _pressure(u_r, u_t, u_z, nu, r, dr, dz, ops, fr=None, fz=None) -> Array:
    """Diagnostic pressure from the meridional momentum balance."""
    nr, nz = u_r.shape
    rs = r.copy()
    rs[0] = 1.0  # guarded; axis rows overwritten below
    rc = rs[:, None]

    def d_r(q):
        return np.gradient(q, dr, axis=0, edge_order=2)

    def d_z(q):
        return np.gradient(q, dz, axis=1, edge_order=2)

    lap_r = d_r(d_r(u_r)) + d_r(u_r) / rc + d_z(d_z(u_r)) - u_r / rc**2
    lap_z = d_r(d_r(u_z)) + d_r(u_z) / rc + d_z(d_z(u_z))
    G_r = -(u_r * d_r(u_r) + u_z * d_z(u_r)) + u_t**2 / rc + nu * lap_r
    G_z = -(u_r * d_r(u_z) + u_z * d_z(u_z)) + nu * lap_z
    G_r[0, :] = 0.0
    lap_z_axis = 4 * (u_z[1, :] - u_z[0, :]) / dr**2 + d_z(d_z(u_z))[0, :]
    G_z[0, :] = -u_z[0, :] * d_z(u_z)[0, :] + nu * lap_z_axis
    if fr is not None:
        G_r = G_r + fr
        G_z = G_z + fz
        G_r[0, :] = 0.0
    rhs = d_r(r[:, None] * G_r) / rc + d_z(G_z)
    rhs[0, :] = 2 * G_r[1, :] / dr + d_z(G_z)[0, :]

    b = rhs.ravel().copy()
    # Neumann data folded into boundary rows (matches _assemble_pressure ghosts)
    idx = lambda i, j: i * nz + j
    b[idx(nr - 1, 0):idx(nr - 1, nz)] -= (1.0 / dr**2 + 1.0 / (2 * dr * r[-1])) * 2 * dr * G_r[-1, :]
    b[0::nz] += 2 * G_z[:, 0] / dz
    b[nz - 1::nz] -= 2 * G_z[:, -1] / dz
    b[idx(0, 0)] = 0.0  # gauge pin
    return ops["pressure"].solve(b).reshape(nr, nz)


# ---------------------------------------------------------------------------
# public operations


def init_field(config: SimConfig) -> AxisymField:
    """Initial snapshot: Gaussian vortex ring (azimuthal vorticity) plus a
    Gaussian swirl blob, with divergence-free meridional velocity derived
    from the induced streamfunction."""
    config.validate()
    nr, nz, dr, dz = config.nr, config.nz, config.dr, config.dz
    r = np.arange(nr) * dr
    z = np.arange(nz) * dz
    R, Z = np.meshgrid(r, z, indexing="ij")
    ic = config.ic
    bump = np.exp(-((R - ic.r0) ** 2 + (Z - ic.z0) ** 2) / ic.a**2)

    omega = ic.gamma0 * bump
    omega[0, :] = 0.0
    omega[-1, :] = 0.0
    omega[:, 0] = 0.0
    omega[:, -1] = 0.0

    ops = _grid_ops(nr, nz, dr, dz)
    psi = _solve_psi(omega, r, ops, nr, nz)
    omega[1:-1, 0] = _wall_vorticity(psi, omega, r, dr, dz)
    u_r, u_z = _velocities(psi, r, dr, dz)
    u_t = _apply_utheta_bcs(ic.w0 * bump)
    p = _pressure(u_r, u_t, u_z, config.nu, r, dr, dz, ops)
    return AxisymField(t=0.0, dr=dr, dz=dz, u_r=u_r, u_theta=u_t, u_z=u_z, p=p,
                       omega=omega)


def initial_swirl_profile(config: SimConfig, r: float, z: float) -> float:
    """The analytic swirl amplitude before boundary clamping (test hook)."""
    ic = config.ic
    return ic.w0 * np.exp(-((r - ic.r0) ** 2 + (z - ic.z0) ** 2) / ic.a**2)


def field_from_state(t: float, dr: float, dz: float, psi: Array, u_theta: Array,
                     omega: Array, nu: float = 1.0,
                     forcing: Forcing | None = None) -> AxisymField:
    """Build a snapshot from sampled streamfunction / vorticity / swirl.

    Velocities derive from psi through the same centered differences the
    integrator uses, so the discrete divergence vanishes to rounding.
    Used to start runs from analytic states in verification studies.
    """
    nr, nz = psi.shape
    r = np.arange(nr) * dr
    psi = np.array(psi, float)
    psi[0, :] = 0.0
    psi[-1, :] = 0.0
    psi[:, 0] = 0.0
    psi[:, -1] = 0.0
    u_r, u_z = _velocities(psi, r, dr, dz)
    u_t = _apply_utheta_bcs(np.array(u_theta, float))
    om = np.array(omega, float)
    om[0, :] = 0.0
    om[-1, :] = 0.0
    om[:, -1] = 0.0
    ops = _grid_ops(nr, nz, dr, dz)
    if forcing is None:
        fr = fz = None
    else:
        R, Z = np.meshgrid(r, np.arange(nz) * dz, indexing="ij")
        fr = np.asarray(forcing.f_r(t, R, Z), float)
        fz = np.asarray(forcing.f_z(t, R, Z), float)
    p = _pressure(u_r, u_t, u_z, nu, r, dr, dz, ops, fr, fz)
    return AxisymField(t=t, dr=dr, dz=dz, u_r=u_r, u_theta=u_t, u_z=u_z, p=p,
                       omega=om)


def cfl_dt(field: AxisymField, config: SimConfig) -> float:
    """dt = cfl * min(advective limit, diffusive limit); positive always."""
    diff = min(field.dr, field.dz) ** 2 / (4 * config.nu)
    umax = field.speed_max()
    if not np.isfinite(umax):
        raise BlowUpError(field.t, "cannot choose dt: field not finite")
    adv = field.dr / umax if umax > 0 else np.inf
    return config.cfl * min(adv, diff)


def step(field: AxisymField, config: SimConfig, dt: float | None = None,
         forcing: Forcing | None = None, compute_pressure: bool = True) -> AxisymField:
    """Advance one explicit RK2 (Heun) step; the input field is not mutated.

    compute_pressure=False carries the previous pressure array forward (the
    velocity update never reads it); run loops refresh p on snapshot steps.
    """
    if dt is None:
        dt = cfl_dt(field, config)
    if dt <= 0:
        raise ConfigurationError(f"dt = {dt:g} must be positive")
    nr, nz, dr, dz = field.nr, field.nz, field.dr, field.dz
    nu = config.nu
    r = field.r
    ops = _grid_ops(nr, nz, dr, dz)
    R, Z = np.meshgrid(r, field.z, indexing="ij")

    def force_arrays(t):
        if forcing is None:
            return None, None, None
        return (np.asarray(forcing.f_r(t, R, Z), float),
                np.asarray(forcing.f_theta(t, R, Z), float),
                np.asarray(forcing.f_z(t, R, Z), float))

    u_r0 = np.array(field.u_r)
    u_t0 = np.array(field.u_theta)
    u_z0 = np.array(field.u_z)
    om0 = np.array(field.omega) if field.omega is not None \
        else _curl_of_velocity(u_r0, u_z0, dr, dz)

    fr, ft, fz = force_arrays(field.t)
    ft_i = None if ft is None else ft[1:-1, 1:-1]
    k1_t, k1_om = _interior_rhs(u_r0, u_t0, u_z0, om0, nu, r, dr, dz, fr, ft_i, fz)

    # predictor
    u_t1 = u_t0.copy()
    u_t1[1:-1, 1:-1] += dt * k1_t
    _apply_utheta_bcs(u_t1)
    om1 = np.zeros_like(om0)
    om1[1:-1, 1:-1] = om0[1:-1, 1:-1] + dt * k1_om
    psi1 = _solve_psi(om1, r, ops, nr, nz)
    u_r1, u_z1 = _velocities(psi1, r, dr, dz)
    om1[1:-1, 0] = _wall_vorticity(psi1, om1, r, dr, dz)

    fr2, ft2, fz2 = force_arrays(field.t + dt)
    ft2_i = None if ft2 is None else ft2[1:-1, 1:-1]
    k2_t, k2_om = _interior_rhs(u_r1, u_t1, u_z1, om1, nu, r, dr, dz, fr2, ft2_i, fz2)

    # corrector
    u_t = u_t0.copy()
    u_t[1:-1, 1:-1] += 0.5 * dt * (k1_t + k2_t)
    _apply_utheta_bcs(u_t)
    om = np.zeros_like(om0)
    om[1:-1, 1:-1] = om0[1:-1, 1:-1] + 0.5 * dt * (k1_om + k2_om)
    psi = _solve_psi(om, r, ops, nr, nz)
    om[1:-1, 0] = _wall_vorticity(psi, om, r, dr, dz)
    u_r, u_z = _velocities(psi, r, dr, dz)

    t_new = field.t + dt
    if compute_pressure:
        frn, _, fzn = force_arrays(t_new)
        p = _pressure(u_r, u_t, u_z, nu, r, dr, dz, ops, frn, fzn)
    else:
        p = field.p

    out = AxisymField(t=t_new, dr=dr, dz=dz, u_r=u_r, u_theta=u_t, u_z=u_z, p=p,
                      omega=om)
    if not out.is_finite():
        raise BlowUpError(t_new)
    return out


def boundary_shear(field: AxisymField) -> BoundaryShear:
    """One-sided 4th-order dz(u_r) and dz(u_theta) at the wall, per radius."""
    if field.nz < 5:
        raise StencilError(f"nz = {field.nz} < 5: cannot form the wall stencil")
    w = np.array([-25.0, 48.0, -36.0, 16.0, -3.0]) / (12.0 * field.dz)
    dzur = field.u_r[:, :5] @ w
    dzut = field.u_theta[:, :5] @ w
    return BoundaryShear(r_grid=field.r, dzur=dzur, dzutheta=dzut)
