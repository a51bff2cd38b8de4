"""Two-implementation certification of the frame calculus.

Every quantity is computed twice: once by the chart-coordinate formulas in
framecalc, once entirely in Cartesian coordinates from the manufactured
fields' exact derivatives, projected onto the frame through the chart
Jacobian.  The two paths share no differentiation code.
"""
from __future__ import annotations

import io
from dataclasses import dataclass

import numpy as np

from . import framecalc, oracle
from .frame import CurvilinearFrame, chart, christoffel, hodge_star_1form, hodge_star_2form, integrate_curve
from .shear import BoundaryShear

DEFAULT_TOLERANCES = {
    "div": 1e-6,
    "laplacian": 1e-5,
    "advection": 1e-5,
    "christoffel": 1e-7,
    "hodge": 1e-12,
    "boundary-identities": 1e-5,
    "pressure-mixed": 1e-8,
}


@dataclass(frozen=True)
class CheckRow:
    check: str
    field_kind: str
    frame_label: str
    worst_error: float
    tolerance: float
    passed: bool


@dataclass(frozen=True)
class VerificationReport:
    seed: int
    rows: tuple[CheckRow, ...]

    @property
    def all_passed(self) -> bool:
        return all(r.passed for r in self.rows)

    def to_text(self) -> str:
        out = io.StringIO()
        out.write(f"verification suite (seed={self.seed})\n")
        for r in self.rows:
            flag = "pass" if r.passed else "FAIL"
            out.write(f"  [{flag}] {r.check:22s} {r.field_kind:14s} {r.frame_label:10s} "
                      f"worst={r.worst_error:.3e} tol={r.tolerance:.0e}\n")
        out.write("ALL PASS\n" if self.all_passed else "FAILURES PRESENT\n")
        return out.getvalue()

    def to_csv(self) -> str:
        lines = ["check,field_kind,frame,worst_error,tolerance,pass"]
        for r in self.rows:
            lines.append(f"{r.check},{r.field_kind},{r.frame_label},"
                         f"{r.worst_error:.17g},{r.tolerance:.17g},{str(r.passed).lower()}")
        return "\n".join(lines) + "\n"


def synthetic_shear(S: float, n: int = 400, r_lo: float = 0.05,
                    r_hi: float = 1.2) -> BoundaryShear:
    """Constant-rate-of-swirl shear trace on a radius grid."""
    r = np.linspace(r_lo, r_hi, n)
    return BoundaryShear(r_grid=r,
                         dzur=np.full(n, np.sqrt(max(0.0, 1 - S * S))),
                         dzutheta=np.full(n, S))


def frame_transform_oracle(field: oracle.ManufacturedField, frame: CurvilinearFrame,
                           quantity: str, point) -> np.ndarray | float:
    """Cartesian-side computation of div / laplacian / advection at a chart
    point, projected onto the frame co-basis."""
    z, rbar, thetabar = point
    p = chart(frame, z, rbar, thetabar).reshape(1, 3)
    if quantity == "div":
        return float(field.divergence_values(p)[0])
    if quantity == "laplacian":
        v = field.laplacian_values(p)[0]
    elif quantity == "advection":
        v = field.advection_values(p)[0]
    else:
        raise ValueError(f"unknown quantity '{quantity}'")
    tv = frame.tangent_at(thetabar)
    nv = frame.normal_at(thetabar)
    return np.array([v[2], v[0] * nv[0] + v[1] * nv[1], v[0] * tv[0] + v[1] * tv[1]])


def christoffel_metric_oracle(frame: CurvilinearFrame, rbar: float, thetabar: float,
                              h: float = 1e-3) -> np.ndarray:
    """Gamma^k_ij = 1/2 g^kl (d_i g_jl + d_j g_il - d_l g_ij) with the metric
    differentiated by 4th-order finite differences of g33 = f^2."""

    def metric(rb, tb):
        f = float(frame.metric_factor(rb, tb))
        return np.diag([1.0, 1.0, f * f])

    w = np.array([1.0, -8.0, 8.0, -1.0]) / 12.0
    offs = np.array([-2, -1, 1, 2])

    def dmetric(axis, rb, tb):
        acc = np.zeros((3, 3))
        for o, c in zip(offs, w):
            if axis == 1:
                acc += c * metric(rb + o * h, tb)
            else:
                acc += c * metric(rb, tb + o * h)
        return acc / h

    dg = [np.zeros((3, 3)), dmetric(1, rbar, thetabar), dmetric(2, rbar, thetabar)]
    ginv = np.linalg.inv(metric(rbar, thetabar))
    out = np.zeros((3, 3, 3))
    for k in range(3):
        for i in range(3):
            for j in range(3):
                s = 0.0
                for l in range(3):
                    s += ginv[k, l] * (dg[i][j, l] + dg[j][i, l] - dg[l][i, j])
                out[k, i, j] = 0.5 * s
    return out


def _scaled_error(a: np.ndarray, b: np.ndarray) -> float:
    scale = max(1.0, float(np.max(np.abs(b))))
    return float(np.max(np.abs(np.asarray(a) - np.asarray(b)))) / scale


def _field_set(rng: np.random.Generator) -> list[oracle.ManufacturedField]:
    mono = []
    for _ in range(3):
        keys = [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 0), (0, 0, 2), (2, 0, 0)]
        mono.append({k: float(c) for k, c in
                     zip(keys, rng.integers(-2, 3, size=len(keys))) if c})
    zero = oracle.ManufacturedField("zero", ((), (), ()))
    return [
        oracle.pure_swirl(q=(1.0, -0.3), w=(0.0, 1.0, 0.4)),
        oracle.poly_noslip(tuple(mono), z_power=1),
        oracle.trig_divfree(freqs=(1.0, 0.7, 1.3),
                            phases=tuple(rng.uniform(-1, 1, 3))),
        oracle.forced_ns(),
        zero,
    ]


def _chart_points(rng: np.random.Generator, frame: CurvilinearFrame, k: int):
    pts = []
    for _ in range(k):
        pts.append((float(rng.uniform(0.005, 0.08)),
                    float(rng.uniform(-0.3, 0.3) * frame.rbar_max),
                    float(rng.uniform(-0.5, 0.5) * frame.delta)))
    return pts


def run_verification_suite(seed: int = 0, tolerances: dict | None = None,
                           mutate_christoffel: bool = False,
                           points_per_case: int = 7) -> VerificationReport:
    tol = dict(DEFAULT_TOLERANCES)
    if tolerances:
        tol.update(tolerances)
    rng = np.random.default_rng(seed)
    fields = _field_set(rng)
    frames = [("circle-S1.00", integrate_curve(synthetic_shear(1.0), [0.3, 0.0])),
              ("spiral-S0.99", integrate_curve(synthetic_shear(0.99), [0.25, 0.0])),
              ("spiral-S0.97", integrate_curve(synthetic_shear(0.97), [0.35, 0.0]))]
    rows: list[CheckRow] = []

    def gamma_under_test(frame, rb, tb):
        g = christoffel(frame, rb, tb)
        if mutate_christoffel:
            g = g.copy()
            g[1, 2, 2] = -g[1, 2, 2]
        return g

    for label, frame in frames:
        for field in fields:
            sampler = framecalc.sampler_from_cartesian(field.values, frame)
            pts = _chart_points(rng, frame, points_per_case)
            div_free = field.kind in ("pure-swirl", "trig-divfree", "forced-ns", "zero")

            worst = 0.0
            for p in pts:
                mine = float(framecalc.divergence_frame(sampler, frame, *p))
                ref = frame_transform_oracle(field, frame, "div", p)
                worst = max(worst, _scaled_error(mine, ref))
            rows.append(CheckRow("div", field.kind, label, worst, tol["div"],
                                 worst <= tol["div"]))

            if div_free:
                worst = 0.0
                for p in pts:
                    mine = framecalc.laplacian_frame(sampler, frame, *p).ravel()
                    ref = frame_transform_oracle(field, frame, "laplacian", p)
                    worst = max(worst, _scaled_error(mine, ref))
                rows.append(CheckRow("laplacian", field.kind, label, worst,
                                     tol["laplacian"], worst <= tol["laplacian"]))

            worst = 0.0
            for p in pts:
                mine = framecalc.covariant_derivative_frame(sampler, frame, *p)
                ref = frame_transform_oracle(field, frame, "advection", p)
                worst = max(worst, _scaled_error(mine, ref))
            rows.append(CheckRow("advection", field.kind, label, worst,
                                 tol["advection"], worst <= tol["advection"]))

            # the boundary reductions assume no-slip and zero divergence
            if div_free and field.kind in ("trig-divfree", "forced-ns"):
                mine = framecalc.boundary_identities(sampler, frame)
                ref = _boundary_oracle(field, frame)
                worst = _scaled_error(mine, ref)
                rows.append(CheckRow("boundary-identities", field.kind, label,
                                     worst, tol["boundary-identities"],
                                     worst <= tol["boundary-identities"]))

        worst = 0.0
        for _ in range(20):
            rb = float(rng.uniform(-0.4, 0.4) * frame.rbar_max)
            tb = float(rng.uniform(-0.6, 0.6) * frame.delta)
            worst = max(worst, float(np.max(np.abs(
                gamma_under_test(frame, rb, tb)
                - christoffel_metric_oracle(frame, rb, tb)))))
        rows.append(CheckRow("christoffel", "-", label, worst,
                             tol["christoffel"], worst <= tol["christoffel"]))

        worst = 0.0
        for _ in range(10):
            rb = float(rng.uniform(-0.4, 0.4) * frame.rbar_max)
            tb = float(rng.uniform(-0.6, 0.6) * frame.delta)
            c2 = rng.standard_normal(3)
            c1 = rng.standard_normal(3)
            rt2 = hodge_star_1form(hodge_star_2form(c2, rb, tb, frame), rb, tb, frame)
            rt1 = hodge_star_2form(hodge_star_1form(c1, rb, tb, frame), rb, tb, frame)
            worst = max(worst, float(np.abs(rt2 - c2).max()),
                        float(np.abs(rt1 - c1).max()))
        # the fixed rules at f = 1 (origin) and at a generic factor
        at0 = hodge_star_2form([1.0, 0.0, 0.0], 0.0, 0.0, frame)
        worst = max(worst, float(np.abs(at0 - [0.0, 0.0, 1.0]).max()))
        rbg = 0.25 * frame.rbar_max
        fval = float(frame.metric_factor(rbg, 0.0))
        gen = hodge_star_2form([0.0, 1.0, 0.0], rbg, 0.0, frame)
        worst = max(worst, float(np.abs(gen - [1.0 / fval, 0.0, 0.0]).max()))
        rows.append(CheckRow("hodge", "-", label, worst, tol["hodge"],
                             worst <= tol["hodge"]))

        p_scalar = oracle.forced_ns()
        p_sampler = lambda Z, R, T, _f=p_scalar, _fr=frame: _f.pressure_values(
            chart(_fr, Z, R, T).reshape(-1, 3))
        v1, v2 = framecalc.pressure_mixed_partials(p_sampler, frame)
        worst = abs(v1 - v2)
        rows.append(CheckRow("pressure-mixed", "scalar", label, worst,
                             tol["pressure-mixed"], worst <= tol["pressure-mixed"]))

    return VerificationReport(seed=seed, rows=tuple(rows))


def _boundary_oracle(field: oracle.ManufacturedField, frame: CurvilinearFrame,
                     h: float = 1e-3) -> np.ndarray:
    """The four boundary quantities from Cartesian exact derivatives: project
    the exact vector Laplacian onto the frame, then differentiate the
    projections by finite differences of chart coordinates only."""
    tv0 = frame.tangent_at(0.0)
    nv0 = frame.normal_at(0.0)

    def lap_proj(z, rb, tb, direction):
        p = chart(frame, z, rb, tb).reshape(1, 3)
        v = field.laplacian_values(p)[0]
        if direction == "e1":
            return v[2]
        if direction == "e2":
            nv = frame.normal_at(tb)
            return v[0] * nv[0] + v[1] * nv[1]
        tvv = frame.tangent_at(tb)
        return v[0] * tvv[0] + v[1] * tvv[1]

    fwd_w = np.array([-25.0, 48.0, -36.0, 16.0, -3.0]) / 12.0
    cen_w = np.array([1.0, -8.0, 8.0, -1.0]) / 12.0
    cen_o = np.array([-2, -1, 1, 2])

    q1 = sum(c * lap_proj(k * h, 0.0, 0.0, "e2") for k, c in enumerate(fwd_w)) / h
    q2 = sum(c * lap_proj(k * h, 0.0, 0.0, "e3") for k, c in enumerate(fwd_w)) / h
    q3 = sum(c * lap_proj(0.0, o * h, 0.0, "e1") for o, c in zip(cen_o, cen_w)) / h
    q4 = sum(c * lap_proj(0.0, 0.0, o * h, "e1") for o, c in zip(cen_o, cen_w)) / h
    return np.array([q1, q2, q3, q4])
