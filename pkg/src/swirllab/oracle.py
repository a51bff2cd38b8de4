"""Manufactured analytic fields with exact derivatives.

Components are sums of separable terms c * X(x) * Y(y) * Z(z) where each
axis factor is poly(t) * sin(w t + phase) * exp(a t).  That family is
closed under differentiation, so every derivative is again a term list and
evaluates in closed form: no numerical differentiation anywhere, and
polynomial fields are exact to rounding.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import comb, pi

import numpy as np

Multi = tuple[int, int, int]


@dataclass(frozen=True)
class AxisFactor:
    poly: tuple[float, ...] = (1.0,)
    trig: tuple[float, float] | None = None  # sin(omega t + phase)
    exp: float = 0.0

    def value(self, t: np.ndarray) -> np.ndarray:
        out = np.polynomial.polynomial.polyval(t, self.poly)
        if self.trig is not None:
            w, ph = self.trig
            out = out * np.sin(w * t + ph)
        if self.exp:
            out = out * np.exp(self.exp * t)
        return out

    def diff(self) -> list[tuple[float, "AxisFactor"]]:
        dpoly = tuple((k + 1) * c for k, c in enumerate(self.poly[1:]))
        out: list[tuple[float, AxisFactor]] = []
        base = dpoly
        if self.exp:
            # (P' + a P) collected into one polynomial
            base = tuple(a + b for a, b in
                         zip(dpoly + (0.0,) * (len(self.poly) - len(dpoly)),
                             tuple(self.exp * c for c in self.poly)))
        if any(base):
            out.append((1.0, AxisFactor(base, self.trig, self.exp)))
        if self.trig is not None:
            w, ph = self.trig
            if w:
                out.append((w, AxisFactor(self.poly, (w, ph + pi / 2), self.exp)))
        return out


@dataclass(frozen=True)
class Term:
    coef: float
    factors: tuple[AxisFactor, AxisFactor, AxisFactor]

    def value(self, pts: np.ndarray) -> np.ndarray:
        out = np.full(pts.shape[0], self.coef)
        for axis in range(3):
            out = out * self.factors[axis].value(pts[:, axis])
        return out

    def diff(self, axis: int) -> list["Term"]:
        out = []
        for scale, fac in self.factors[axis].diff():
            fs = list(self.factors)
            fs[axis] = fac
            out.append(Term(self.coef * scale, tuple(fs)))
        return out


Expr = tuple[Term, ...]


def expr_value(expr: Expr, pts: np.ndarray) -> np.ndarray:
    out = np.zeros(pts.shape[0])
    for t in expr:
        out += t.value(pts)
    return out


def expr_diff(expr: Expr, axis: int) -> Expr:
    out: list[Term] = []
    for t in expr:
        out.extend(t.diff(axis))
    return tuple(out)


def expr_diff_multi(expr: Expr, multi: Multi) -> Expr:
    for axis, count in enumerate(multi):
        for _ in range(count):
            expr = expr_diff(expr, axis)
    return expr


def poly3d(monomials: dict[Multi, float]) -> Expr:
    terms = []
    for (i, j, k), c in monomials.items():
        fx = AxisFactor(poly=(0.0,) * i + (1.0,))
        fy = AxisFactor(poly=(0.0,) * j + (1.0,))
        fz = AxisFactor(poly=(0.0,) * k + (1.0,))
        terms.append(Term(float(c), (fx, fy, fz)))
    return tuple(terms)


def curl(components: tuple[Expr, Expr, Expr]) -> tuple[Expr, Expr, Expr]:
    ax, ay, az = components
    return (expr_diff(az, 1) + tuple(Term(-t.coef, t.factors) for t in expr_diff(ay, 2)),
            expr_diff(ax, 2) + tuple(Term(-t.coef, t.factors) for t in expr_diff(az, 0)),
            expr_diff(ay, 0) + tuple(Term(-t.coef, t.factors) for t in expr_diff(ax, 1)))


class ManufacturedField:
    """A vector field (plus optional pressure) with exact derivatives."""

    MAX_ORDER = 3

    def __init__(self, kind: str, components: tuple[Expr, Expr, Expr],
                 pressure: Expr | None = None, params: dict | None = None):
        self.kind = kind
        self.components = components
        self.pressure = pressure
        self.params = params or {}
        self._dcache: dict[tuple[int, Multi], Expr] = {}
        self._pcache: dict[Multi, Expr] = {}

    def _component_expr(self, comp: int, multi: Multi) -> Expr:
        key = (comp, multi)
        if key not in self._dcache:
            self._dcache[key] = expr_diff_multi(self.components[comp], multi)
        return self._dcache[key]

    def values(self, pts: np.ndarray) -> np.ndarray:
        pts = np.atleast_2d(np.asarray(pts, float))
        return np.stack([expr_value(c, pts) for c in self.components], axis=1)

    def derivative_values(self, multi: Multi, pts: np.ndarray) -> np.ndarray:
        if sum(multi) > self.MAX_ORDER:
            raise ValueError(f"derivative order {sum(multi)} exceeds {self.MAX_ORDER}")
        pts = np.atleast_2d(np.asarray(pts, float))
        return np.stack(
            [expr_value(self._component_expr(c, tuple(multi)), pts) for c in range(3)],
            axis=1)

    def pressure_values(self, pts: np.ndarray) -> np.ndarray:
        if self.pressure is None:
            raise ValueError(f"{self.kind} carries no pressure")
        return expr_value(self.pressure, np.atleast_2d(np.asarray(pts, float)))

    def pressure_derivative(self, multi: Multi, pts: np.ndarray) -> np.ndarray:
        if self.pressure is None:
            raise ValueError(f"{self.kind} carries no pressure")
        if sum(multi) > self.MAX_ORDER:
            raise ValueError(f"derivative order {sum(multi)} exceeds {self.MAX_ORDER}")
        multi = tuple(multi)
        if multi not in self._pcache:
            self._pcache[multi] = expr_diff_multi(self.pressure, multi)
        return expr_value(self._pcache[multi], np.atleast_2d(np.asarray(pts, float)))

    def divergence_values(self, pts: np.ndarray) -> np.ndarray:
        pts = np.atleast_2d(np.asarray(pts, float))
        out = np.zeros(pts.shape[0])
        for axis in range(3):
            multi = tuple(1 if a == axis else 0 for a in range(3))
            out += expr_value(self._component_expr(axis, multi), pts)
        return out

    def laplacian_values(self, pts: np.ndarray) -> np.ndarray:
        pts = np.atleast_2d(np.asarray(pts, float))
        out = np.zeros((pts.shape[0], 3))
        for axis in range(3):
            multi = tuple(2 if a == axis else 0 for a in range(3))
            out += self.derivative_values(multi, pts)
        return out

    def advection_values(self, pts: np.ndarray) -> np.ndarray:
        """(u . grad) u from exact first derivatives."""
        pts = np.atleast_2d(np.asarray(pts, float))
        u = self.values(pts)
        out = np.zeros_like(u)
        for axis in range(3):
            multi = tuple(1 if a == axis else 0 for a in range(3))
            out += u[:, axis:axis + 1] * self.derivative_values(multi, pts)
        return out

    def forcing_values(self, pts: np.ndarray) -> np.ndarray:
        """Steady momentum residual (u . grad)u + grad p - lap u (nu = 1)."""
        pts = np.atleast_2d(np.asarray(pts, float))
        grad_p = np.stack(
            [self.pressure_derivative(tuple(1 if a == ax else 0 for a in range(3)), pts)
             for ax in range(3)], axis=1)
        return self.advection_values(pts) + grad_p - self.laplacian_values(pts)


def exact_derivative(field: ManufacturedField, point, multi_index: Multi) -> np.ndarray:
    """Closed-form derivative of every component at one point, shape (3,)."""
    return field.derivative_values(tuple(multi_index), np.asarray(point, float))[0]


# ---------------------------------------------------------------------------
# the four field families


def _radial_poly_xy(q: tuple[float, ...], extra_y: bool) -> dict[Multi, float]:
    """Monomials of Q(x^2 + y^2) times x (extra_y False) or y (True)."""
    out: dict[Multi, float] = {}
    for k, c in enumerate(q):
        if c == 0:
            continue
        for m in range(k + 1):
            i, j = 2 * m, 2 * (k - m)
            key = (i, j + 1, 0) if extra_y else (i + 1, j, 0)
            out[key] = out.get(key, 0.0) + c * comb(k, m)
    return out


def pure_swirl(q: tuple[float, ...] = (1.0,), w: tuple[float, ...] = (0.0, 1.0)) -> ManufacturedField:
    """Azimuthal field u_theta = w(z) * r * Q(r^2) rotated to Cartesian axes."""
    wz = AxisFactor(poly=tuple(float(c) for c in w))
    comp_x = tuple(Term(-t.coef, (t.factors[0], t.factors[1], wz))
                   for t in poly3d(_radial_poly_xy(q, extra_y=True)))
    comp_y = tuple(Term(t.coef, (t.factors[0], t.factors[1], wz))
                   for t in poly3d(_radial_poly_xy(q, extra_y=False)))
    return ManufacturedField("pure-swirl", (comp_x, comp_y, ()),
                             params={"q": tuple(q), "w": tuple(w)})


def poly_noslip(monomials: tuple[dict[Multi, float], dict[Multi, float], dict[Multi, float]],
                z_power: int = 1) -> ManufacturedField:
    """u_i = z^p * P_i(x, y, z): vanishes on z = 0 with all tangential
    derivatives."""
    comps = []
    for mono in monomials:
        shifted = {(i, j, k + z_power): c for (i, j, k), c in mono.items()}
        comps.append(poly3d(shifted))
    return ManufacturedField("poly-noslip", tuple(comps),
                             params={"z_power": z_power})


def trig_divfree(freqs: tuple[float, ...] = (1.0, 0.7, 1.3),
                 phases: tuple[float, ...] = (0.3, -0.2, 0.9),
                 amps: tuple[float, ...] = (1.0, 0.6, -0.8)) -> ManufacturedField:
    """curl of z^2 * B with trigonometric B: exactly divergence-free and
    no-slip on z = 0."""
    z2 = (0.0, 0.0, 1.0)
    potential = []
    for i in range(3):
        fx = AxisFactor(trig=(freqs[i % 3], phases[i % 3]))
        fy = AxisFactor(trig=(freqs[(i + 1) % 3], phases[(i + 1) % 3]))
        fz = AxisFactor(poly=z2, trig=(freqs[(i + 2) % 3], phases[(i + 2) % 3]))
        potential.append((Term(float(amps[i]), (fx, fy, fz)),))
    comps = curl(tuple(potential))
    return ManufacturedField("trig-divfree", comps,
                             params={"freqs": freqs, "phases": phases, "amps": amps})


def forced_ns() -> ManufacturedField:
    """Steady forced pair (u, p) whose forcing vanishes on the boundary, so
    grad p = lap u holds exactly on z = 0 (nu = 1)."""
    zeta = AxisFactor(poly=(0.0, 0.0, 1.0), trig=(1.0, pi / 2))  # z^2 cos z
    ex = AxisFactor(exp=1.0)
    sin_y = AxisFactor(trig=(1.0, 0.0))
    cos_y = AxisFactor(trig=(1.0, pi / 2))
    one = AxisFactor()
    # u = zeta(z) * (h_y, -h_x, 0) with h = e^x cos y
    comp_x = (Term(-1.0, (ex, sin_y, zeta)),)
    comp_y = (Term(-1.0, (ex, cos_y, zeta)),)
    pressure = (Term(-2.0, (ex, sin_y, one)),)
    return ManufacturedField("forced-ns", (comp_x, comp_y, ()), pressure=pressure)
