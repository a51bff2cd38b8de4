"""Boundary shear trace: the wall-normal derivative of the velocity at z = 0.

The shear vector at radius r is dz_ur * e_r + dz_utheta * e_theta; its
magnitude is vh_mag and the rate of swirl S = dz_utheta / vh_mag.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import SwirllabError


@dataclass(frozen=True)
class BoundaryShear:
    r_grid: np.ndarray
    dzur: np.ndarray
    dzutheta: np.ndarray
    S: np.ndarray = field(init=False)
    vh_mag: np.ndarray = field(init=False)
    valid: np.ndarray = field(init=False)

    def __post_init__(self):
        r = np.asarray(self.r_grid, float)
        a = np.asarray(self.dzur, float)
        b = np.asarray(self.dzutheta, float)
        if not (r.shape == a.shape == b.shape) or r.ndim != 1:
            raise SwirllabError("shear arrays must be 1-D and share a shape")
        if r.shape[0] >= 2 and np.any(np.diff(r) <= 0):
            raise SwirllabError("r_grid must be strictly increasing")
        vh = np.hypot(a, b)
        ok = vh > 0
        s = np.full_like(vh, np.nan)
        np.divide(b, vh, out=s, where=ok)
        object.__setattr__(self, "r_grid", r)
        object.__setattr__(self, "dzur", a)
        object.__setattr__(self, "dzutheta", b)
        object.__setattr__(self, "S", s)
        object.__setattr__(self, "vh_mag", vh)
        object.__setattr__(self, "valid", ok)
        for arr in (self.r_grid, self.dzur, self.dzutheta, self.S, self.vh_mag, self.valid):
            arr.setflags(write=False)


def swirl_direction(S: float, theta: float) -> np.ndarray:
    """Unit shear direction S * e_theta + sqrt(1 - S^2) * e_r in the plane."""
    if abs(S) > 1:
        raise ValueError(f"|S| = {abs(S):g} exceeds 1")
    radial = np.sqrt(max(0.0, 1.0 - S * S))
    e_r = np.array([np.cos(theta), np.sin(theta)])
    e_t = np.array([-np.sin(theta), np.cos(theta)])
    return S * e_t + radial * e_r
