"""Locating xi(t): the radius where the wall shear magnitude peaks."""
from __future__ import annotations

import numpy as np

from .errors import DegenerateShearError
from .shear import BoundaryShear


def locate_xi(shear: BoundaryShear, previous: float | None = None,
              jump_cells: float = 5.0) -> tuple[float, bool]:
    """Argmax radius of |v_h|, refined by quadratic interpolation.

    Ties break toward the smallest radius (argmax returns the first hit on
    an ascending grid).  jump_flag is set when the new location moved more
    than jump_cells grid spacings from `previous`.
    """
    vh = shear.vh_mag
    if not np.any(vh > 0):
        raise DegenerateShearError("wall shear vanishes identically")
    k = int(np.argmax(vh))
    xi = float(shear.r_grid[k])
    if 0 < k < len(vh) - 1:
        a, b, c = float(vh[k - 1]), float(vh[k]), float(vh[k + 1])
        denom = a - 2 * b + c
        if denom < 0:  # genuine interior peak
            hl = float(shear.r_grid[k] - shear.r_grid[k - 1])
            xi = float(shear.r_grid[k]) + 0.5 * hl * (a - c) / denom
    jump = False
    if previous is not None:
        spacing = float(np.diff(shear.r_grid).mean())
        jump = abs(xi - previous) > jump_cells * spacing
    return xi, jump
