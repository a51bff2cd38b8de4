"""Axisymmetric Navier-Stokes with swirl over a no-slip wall, plus the
curve-following boundary frame and shear-growth diagnostics."""

from .config import DiagnosticsConfig, SimConfig, VortexRingIC, load_config
from .diagnostics import DiagnosticSample, DiagnosticsParams, diagnose_series, sample_diagnostics
from .field import AxisymField
from .frame import CurvilinearFrame, chart, christoffel, hodge_star_1form, hodge_star_2form, integrate_curve
from .gronwall import TheoremCheck, integrating_factor_solution, ode_residual, theorem_check
from .oracle import ManufacturedField, exact_derivative
from .shear import BoundaryShear, swirl_direction
from .solver import Forcing, boundary_shear, cfl_dt, init_field, step
from .snapshots import read_snapshot, write_snapshot
from .tracking import locate_xi
from .verify import run_verification_suite

__version__ = "0.1.0"

__all__ = [
    "AxisymField", "BoundaryShear", "CurvilinearFrame", "DiagnosticSample",
    "DiagnosticsConfig", "DiagnosticsParams", "Forcing", "ManufacturedField",
    "SimConfig", "TheoremCheck", "VortexRingIC", "boundary_shear", "cfl_dt",
    "chart", "christoffel", "diagnose_series", "exact_derivative",
    "hodge_star_1form", "hodge_star_2form", "init_field", "integrate_curve",
    "integrating_factor_solution", "load_config", "locate_xi", "ode_residual",
    "read_snapshot", "run_verification_suite", "sample_diagnostics", "step",
    "swirl_direction", "theorem_check", "write_snapshot",
]
