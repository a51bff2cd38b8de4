"""AxisymField: one snapshot of the axisymmetric flow on the (r, z) grid.

Grid convention: index [i, j] holds the value at (r, z) = (i*dr, j*dz),
so row i = 0 is the symmetry axis and column j = 0 the no-slip wall.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import SwirllabError


@dataclass(frozen=True)
class AxisymField:
    t: float
    dr: float
    dz: float
    u_r: np.ndarray
    u_theta: np.ndarray
    u_z: np.ndarray
    p: np.ndarray
    # Companion azimuthal vorticity carried between solver steps.  Dividing a
    # curl of the stored velocities by r re-amplifies rounding/truncation near
    # the axis, so the integrator keeps its own omega; snapshots do not store
    # it, and a omega-less field is re-curled once on the next step.
    omega: np.ndarray | None = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        shapes = {a.shape for a in (self.u_r, self.u_theta, self.u_z, self.p)}
        if len(shapes) != 1:
            raise SwirllabError(f"component arrays disagree in shape: {shapes}")
        for a in (self.u_r, self.u_theta, self.u_z, self.p):
            a.setflags(write=False)
        if self.omega is not None:
            self.omega.setflags(write=False)

    @property
    def nr(self) -> int:
        return self.u_r.shape[0]

    @property
    def nz(self) -> int:
        return self.u_r.shape[1]

    @property
    def r(self) -> np.ndarray:
        return np.arange(self.nr) * self.dr

    @property
    def z(self) -> np.ndarray:
        return np.arange(self.nz) * self.dz

    def divergence(self) -> np.ndarray:
        """Centered discrete cylindrical divergence on interior nodes.

        d(r u_r)/dr / r + d(u_z)/dz, shape (nr-2, nz-2).
        """
        r = self.r
        ru = r[:, None] * self.u_r
        div_r = (ru[2:, 1:-1] - ru[:-2, 1:-1]) / (2 * self.dr * r[1:-1, None])
        div_z = (self.u_z[1:-1, 2:] - self.u_z[1:-1, :-2]) / (2 * self.dz)
        return div_r + div_z

    def max_divergence(self) -> float:
        return float(np.abs(self.divergence()).max())

    def kinetic_energy(self) -> float:
        """sum r * |u|^2 * dr * dz over the grid."""
        sq = self.u_r**2 + self.u_theta**2 + self.u_z**2
        return float(np.sum(self.r[:, None] * sq) * self.dr * self.dz)

    def speed_max(self) -> float:
        sq = self.u_r**2 + self.u_theta**2 + self.u_z**2
        return float(np.sqrt(sq.max()))

    def is_finite(self) -> bool:
        return all(np.isfinite(a).all() for a in (self.u_r, self.u_theta, self.u_z, self.p))

    def check_invariants(self, proj_tol: float = 1e-8) -> None:
        """Raise SwirllabError if any field invariant is violated."""
        if not self.is_finite():
            raise SwirllabError("field contains non-finite entries")
        for name, a in (("u_r", self.u_r), ("u_theta", self.u_theta), ("u_z", self.u_z)):
            wall = np.abs(a[:, 0]).max()
            if wall != 0.0:
                raise SwirllabError(f"no-slip violated: max |{name}| on wall = {wall:g}")
        if np.abs(self.u_r[0, :]).max() != 0.0 or np.abs(self.u_theta[0, :]).max() != 0.0:
            raise SwirllabError("axis regularity violated: u_r or u_theta nonzero at r=0")
        # one-sided (-3 u0 + 4 u1 - u2) = 0: exact (to rounding) by construction
        resid = np.abs(-3 * self.u_z[0, :] + 4 * self.u_z[1, :] - self.u_z[2, :]).max()
        scale = max(float(np.abs(self.u_z).max()), 1.0)
        if resid > 1e-12 * scale:
            raise SwirllabError(f"axis regularity violated: one-sided d(u_z)/dr residual = {resid:g}")
        div = self.max_divergence()
        if div > proj_tol:
            raise SwirllabError(f"discrete divergence {div:g} exceeds tolerance {proj_tol:g}")
