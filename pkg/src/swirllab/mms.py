"""Manufactured forced solution for solver convergence studies.

A steady analytic state satisfying every boundary condition of the solver
(no-slip wall, axis regularity, stress-free top and outer boundaries,
exactly divergence-free meridional flow from a streamfunction).  The
forcing that makes it a steady solution of the momentum equations is
derived symbolically; sympy is imported lazily so the core package does
not depend on it.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import SimConfig
from .field import AxisymField
from .solver import Forcing, _apply_utheta_bcs, _grid_ops, _pressure, _velocities


@dataclass(frozen=True)
class ForcedCase:
    """Lambdified manufactured state on the unit square."""
    psi: callable
    u_r: callable
    u_z: callable
    u_theta: callable
    omega: callable
    pressure: callable
    forcing: Forcing
    amplitude: float
    swirl: float
    nu: float


def build_case(amplitude: float = 60.0, swirl: float = 1.0, nu: float = 1.0) -> ForcedCase:
    import sympy as sp

    r, z = sp.symbols("r z", positive=True)
    psi = amplitude * r**4 * (1 - r) ** 3 * z**2 * (1 - z) ** 3
    u_r = -sp.diff(psi, z) / r
    u_z = sp.diff(psi, r) / r
    u_t = swirl * (r - r**2 / 2) * (z - z**2 / 2)
    p = sp.cos(sp.pi * r) * sp.cos(sp.pi * z) / 10
    om = sp.simplify(sp.diff(u_r, z) - sp.diff(u_z, r))

    def lap(q):
        return sp.diff(q, r, 2) + sp.diff(q, r) / r + sp.diff(q, z, 2)

    f_r = (u_r * sp.diff(u_r, r) + u_z * sp.diff(u_r, z) - u_t**2 / r
           + sp.diff(p, r) - nu * (lap(u_r) - u_r / r**2))
    f_t = (u_r * sp.diff(u_t, r) + u_z * sp.diff(u_t, z) + u_r * u_t / r
           - nu * (lap(u_t) - u_t / r**2))
    f_z = (u_r * sp.diff(u_z, r) + u_z * sp.diff(u_z, z)
           + sp.diff(p, z) - nu * lap(u_z))

    L = lambda e: sp.lambdify((r, z), sp.simplify(e), "numpy")
    fr_f, ft_f, fz_f = L(f_r), L(f_t), L(f_z)
    guard = lambda R: np.maximum(R, 1e-8)  # expressions are regular as r -> 0
    forcing = Forcing(
        f_r=lambda t, R, Z: fr_f(guard(R), Z),
        f_theta=lambda t, R, Z: ft_f(guard(R), Z),
        f_z=lambda t, R, Z: fz_f(guard(R), Z))
    return ForcedCase(psi=L(psi), u_r=L(u_r), u_z=L(u_z), u_theta=L(u_t),
                      omega=L(om), pressure=L(p), forcing=forcing,
                      amplitude=amplitude, swirl=swirl, nu=nu)


def initial_field(case: ForcedCase, n: int) -> tuple[AxisymField, SimConfig]:
    """Sample the manufactured state on an n x n unit-square grid, deriving
    the velocities through the solver's own streamfunction stencils."""
    cfg = SimConfig(nr=n, nz=n, nu=case.nu)
    rr = np.arange(n) * cfg.dr
    R, Z = np.meshgrid(rr, np.arange(n) * cfg.dz, indexing="ij")
    Rs = np.maximum(R, 1e-8)
    psi0 = case.psi(Rs, Z)
    psi0[0, :] = 0.0
    psi0[:, 0] = 0.0
    psi0[:, -1] = 0.0
    psi0[-1, :] = 0.0
    u_r, u_z = _velocities(psi0, rr, cfg.dr, cfg.dz)
    u_t = _apply_utheta_bcs(case.u_theta(R, Z))
    om = case.omega(Rs, Z)
    om[0, :] = 0.0
    om[-1, :] = 0.0
    om[:, -1] = 0.0
    ops = _grid_ops(n, n, cfg.dr, cfg.dz)
    p0 = _pressure(u_r, u_t, u_z, case.nu, rr, cfg.dr, cfg.dz, ops,
                   case.forcing.f_r(0.0, R, Z), case.forcing.f_z(0.0, R, Z))
    return AxisymField(t=0.0, dr=cfg.dr, dz=cfg.dz, u_r=u_r, u_theta=u_t,
                       u_z=u_z, p=p0, omega=om), cfg


def solution_error(case: ForcedCase, field: AxisymField) -> float:
    """Max-norm velocity error against the analytic state."""
    n = field.nr
    rr = np.arange(n) * field.dr
    R, Z = np.meshgrid(rr, np.arange(field.nz) * field.dz, indexing="ij")
    Rs = np.maximum(R, 1e-8)
    return max(float(np.abs(field.u_r - case.u_r(Rs, Z)).max()),
               float(np.abs(field.u_theta - case.u_theta(R, Z)).max()),
               float(np.abs(field.u_z - case.u_z(Rs, Z)).max()))


def run_convergence(case: ForcedCase, levels=(65, 129, 257), t_end: float = 4e-4,
                    cfl: float = 0.4, check_divergence: float | None = 1e-8,
                    progress=None):
    """Integrate the forced case to t_end at each resolution.

    Returns (errors, worst_divergence) lists aligned with `levels`.
    """
    from .solver import step

    errors, divs = [], []
    for n in levels:
        field, cfg = initial_field(case, n)
        dt = cfl * min(cfg.dr, cfg.dz) ** 2 / (4 * case.nu)
        nsteps = int(np.ceil(t_end / dt))
        dt = t_end / nsteps
        worst_div = field.max_divergence()
        for k in range(nsteps):
            field = step(field, cfg, dt=dt, forcing=case.forcing,
                         compute_pressure=(k == nsteps - 1))
            if check_divergence is not None:
                d = field.max_divergence()
                worst_div = max(worst_div, d)
                if d > check_divergence:
                    raise AssertionError(
                        f"divergence {d:g} exceeded {check_divergence:g} at "
                        f"step {k} (n={n})")
        errors.append(solution_error(case, field))
        divs.append(worst_div)
        if progress is not None:
            progress(n, errors[-1], worst_div)
    return errors, divs


def fitted_order(levels, errors) -> float:
    h = [1.0 / (n - 1) for n in levels]
    return float(np.polyfit(np.log(h), np.log(errors), 1)[0])
