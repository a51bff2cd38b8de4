"""Per-snapshot shear diagnostics at the tracked point.

The chart is rebuilt from scratch at every snapshot (the tracked point can
jump); all derivative quantities are chart-coordinate finite differences of
the interpolated velocity at the chart origin.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.interpolate import CubicSpline

from .errors import (ChartInvalidError, DegenerateFieldError, DegenerateShearError,
                     RegimeError)
from .field import AxisymField
from .frame import integrate_curve
from .framecalc import sampler_from_axisym
from .shear import BoundaryShear
from .solver import boundary_shear
from .stencils import AXIS_RBAR, AXIS_THETA, AXIS_Z, fd, fd_cross
from .tracking import locate_xi

log = logging.getLogger(__name__)

CSV_COLUMNS = ("t", "xi_r", "jump_flag", "vh_at_xi", "S_at_xi", "kappa", "dkappa",
               "alpha1", "alpha2", "alpha3", "beta1", "beta2", "beta3", "beta4",
               "beta5", "F_proof", "F_thm", "G", "ode_residual")


@dataclass(frozen=True)
class DiagnosticSample:
    t: float
    xi_r: float
    jump_flag: bool
    vh_at_xi: float
    S_at_xi: float
    kappa: float
    dkappa: float
    alpha1: float
    alpha2: float
    alpha3: float
    beta1: float
    beta2: float
    beta3: float
    beta4: float
    beta5: float
    F_proof: float
    F_thm: float
    G: float
    # the tangential-derivative reading of the growth quantity; vanishes on a
    # no-slip wall and is logged alongside the shear reading used for G
    G_tangential: float = 0.0
    eps_align: float = 0.0
    eps_max: float = 0.0


@dataclass(frozen=True)
class DiagnosticsParams:
    s_min: float = 0.95
    ds_max: float = 0.1
    fd_step: float | None = None  # default: max(1e-3, 2 * grid spacing)
    arc_samples: int = 201


def _valid_window(shear: BoundaryShear, xi_r: float) -> slice:
    """Maximal contiguous run of valid shear samples containing xi_r."""
    k = int(np.searchsorted(shear.r_grid, xi_r))
    k = min(max(k, 0), len(shear.r_grid) - 1)
    if not shear.valid[k]:
        raise RegimeError(f"shear magnitude vanishes at xi = {xi_r:g}")
    lo = k
    while lo > 0 and shear.valid[lo - 1]:
        lo -= 1
    hi = k
    while hi < len(shear.r_grid) - 1 and shear.valid[hi + 1]:
        hi += 1
    return slice(lo, hi + 1)


def sample_diagnostics(field: AxisymField, xi_r: float,
                       params: DiagnosticsParams = DiagnosticsParams(),
                       jump_flag: bool = False,
                       frame=None) -> DiagnosticSample:
    """Build the frame at the tracked point and measure every derivative
    quantity at the chart origin.

    Passing a pre-built frame skips the shear-based frame construction and
    the swirl-dominance gate (used for fields whose own wall shear is
    degenerate, e.g. cubic-in-z synthetic profiles).
    """
    shear = boundary_shear(field)
    hg = max(field.dr, field.dz)
    h = params.fd_step if params.fd_step is not None else max(1e-3, 2 * hg)
    if frame is None:
        win = _valid_window(shear, xi_r)
        rw = shear.r_grid[win]
        if len(rw) < 8:
            raise RegimeError("too few valid shear samples around xi")
        s_spline = CubicSpline(rw, shear.S[win])
        vh_spline = CubicSpline(rw, shear.vh_mag[win])
        s_xi = float(s_spline(xi_r))
        ds_xi = float(s_spline.derivative()(xi_r))
        vh_xi = float(vh_spline(xi_r))
        if abs(s_xi) < params.s_min:
            raise RegimeError(
                f"|S(xi)| = {abs(s_xi):.3f} below the swirl-dominance threshold "
                f"{params.s_min}")
        if abs(ds_xi) > params.ds_max:
            raise RegimeError(
                f"|dS/dr(xi)| = {abs(ds_xi):.3f} above threshold {params.ds_max}")
        frame = integrate_curve(shear, [xi_r, 0.0], n=params.arc_samples)
        if frame.delta < 4.5 * h:
            frame = integrate_curve(shear, [xi_r, 0.0], delta=5.0 * h,
                                    n=params.arc_samples)
    else:
        k = min(max(int(np.searchsorted(shear.r_grid, xi_r)), 0),
                len(shear.r_grid) - 1)
        s_xi = float(shear.S[k]) if shear.valid[k] else float("nan")
        vh_xi = float(shear.vh_mag[k])
    sampler = sampler_from_axisym(field, frame)
    ur = lambda Z, R, T: sampler(Z, R, T)[1]
    ut = lambda Z, R, T: sampler(Z, R, T)[2]
    dzut = lambda Z, R, T: fd(ut, Z, R, T, AXIS_Z, h)
    dzur = lambda Z, R, T: fd(ur, Z, R, T, AXIS_Z, h)

    o = 0.0
    alpha1 = float(dzut(o, o, o))
    alpha2 = float(dzur(o, o, o))
    alpha3 = float(fd(ut, o, o, o, AXIS_Z, h, 3))
    beta1 = float(fd(dzut, o, o, o, AXIS_RBAR, h))
    beta2 = float(fd(dzur, o, o, o, AXIS_THETA, h))
    beta3 = float(fd_cross(dzur, o, o, o, AXIS_RBAR, AXIS_THETA, h))
    beta4 = float(fd(dzut, o, o, o, AXIS_THETA, h, 2))
    beta5 = float(fd(dzut, o, o, o, AXIS_RBAR, h, 2))
    g_tan = float(fd(ut, o, o, o, AXIS_RBAR, h))

    f_proof = -alpha3 - beta3 - 2 * beta4 - beta5
    f_thm = abs(alpha3) + abs(beta3) + abs(beta4) + abs(beta5)
    log.debug("growth quantity at xi=%g: shear reading %g, tangential reading %g",
              xi_r, alpha1, g_tan)

    # recorded alignment tolerances, calibrated to hit 1e-2*|alpha1| on a
    # 128^2 desk grid and shrink quadratically under refinement
    eps = max(1e-12, 0.01 * abs(alpha1) * (128.0 * hg) ** 2)
    return DiagnosticSample(
        t=field.t, xi_r=xi_r, jump_flag=jump_flag, vh_at_xi=vh_xi, S_at_xi=s_xi,
        kappa=float(frame.kappa_at(0.0)), dkappa=float(frame.dkappa_at(0.0)),
        alpha1=alpha1, alpha2=alpha2, alpha3=alpha3,
        beta1=beta1, beta2=beta2, beta3=beta3, beta4=beta4, beta5=beta5,
        F_proof=f_proof, F_thm=f_thm, G=alpha1, G_tangential=g_tan,
        eps_align=eps, eps_max=eps)


def diagnose_series(fields: Sequence[AxisymField],
                    params: DiagnosticsParams = DiagnosticsParams(),
                    max_workers: int = 1):
    """Track xi over time-ordered snapshots and sample each one.

    Returns (samples, failures): samples[i] is None where the snapshot was
    not diagnosable, with the reason recorded in failures[i].
    """
    locations: list[tuple[float, bool] | None] = []
    failures: list[str | None] = [None] * len(fields)
    prev = None
    for i, fld in enumerate(fields):
        try:
            xi, jump = locate_xi(boundary_shear(fld), previous=prev)
            locations.append((xi, jump))
            prev = xi
        except DegenerateShearError as exc:  # recorded, not fatal
            locations.append(None)
            failures[i] = str(exc)

    def work(i: int):
        loc = locations[i]
        if loc is None:
            return None
        try:
            return sample_diagnostics(fields[i], loc[0], params, jump_flag=loc[1])
        except (RegimeError, ChartInvalidError, DegenerateFieldError) as exc:
            failures[i] = str(exc)
            return None

    if max_workers > 1:
        from concurrent.futures import ThreadPoolExecutor
        with ThreadPoolExecutor(max_workers=max_workers) as pool:
            samples = list(pool.map(work, range(len(fields))))
    else:
        samples = [work(i) for i in range(len(fields))]
    return samples, failures


def write_csv(path, samples: Sequence[DiagnosticSample | None],
              residuals: Sequence[float] | None = None,
              footer_lines: Sequence[str] = ()) -> None:
    """Diagnostics CSV: one row per snapshot, 17 significant digits, with
    '#'-prefixed footer lines for the run summary."""

    def fmt(x) -> str:
        if x is None or (isinstance(x, float) and not np.isfinite(x)):
            return ""
        return f"{x:.17g}"

    with open(path, "w") as fh:
        fh.write(",".join(CSV_COLUMNS) + "\n")
        for i, s in enumerate(samples):
            res = None
            if residuals is not None and i < len(residuals):
                res = residuals[i]
            if s is None:
                fh.write(",".join([""] * len(CSV_COLUMNS)) + "\n")
                continue
            row = [fmt(s.t), fmt(s.xi_r), str(int(s.jump_flag)), fmt(s.vh_at_xi),
                   fmt(s.S_at_xi), fmt(s.kappa), fmt(s.dkappa), fmt(s.alpha1),
                   fmt(s.alpha2), fmt(s.alpha3), fmt(s.beta1), fmt(s.beta2),
                   fmt(s.beta3), fmt(s.beta4), fmt(s.beta5), fmt(s.F_proof),
                   fmt(s.F_thm), fmt(s.G), fmt(res)]
            fh.write(",".join(row) + "\n")
        for line in footer_lines:
            fh.write(f"# {line}\n")
