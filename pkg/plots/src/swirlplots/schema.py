"""CSV access for the documented diagnostics / shear-dump schemas.

Rows are comma-separated with a mandatory header; empty cells mean
"undefined" and parse to NaN.  Lines starting with '#' are footer metadata
of the form '# key = value'.
"""
from __future__ import annotations

import csv
from pathlib import Path

import numpy as np


class SchemaError(Exception):
    pass


REQUIRED_COLUMNS = {
    "shear-profile": ("dist", "omega_mag"),
    "direction-profile": ("dist", "dir_r", "dir_theta"),
    "xi-track": ("t", "xi_r"),
    "growth-envelope": ("t", "G"),
}


def read_table(path: str | Path) -> tuple[dict[str, np.ndarray], dict[str, str]]:
    """Returns (columns, footer) where footer maps metadata keys to strings."""
    path = Path(path)
    footer: dict[str, str] = {}
    rows: list[list[str]] = []
    header: list[str] | None = None
    with open(path, newline="") as fh:
        for raw in fh:
            line = raw.rstrip("\n")
            if not line.strip():
                continue
            if line.lstrip().startswith("#"):
                body = line.lstrip()[1:].strip()
                if "=" in body:
                    key, _, value = body.partition("=")
                    footer[key.strip()] = value.strip()
                continue
            parsed = next(csv.reader([line]))
            if header is None:
                header = [c.strip() for c in parsed]
            else:
                rows.append(parsed)
    if header is None:
        raise SchemaError(f"{path}: no header row")

    def to_float(cell: str) -> float:
        cell = cell.strip()
        if not cell:
            return np.nan
        try:
            return float(cell)
        except ValueError:
            return np.nan

    columns = {}
    for j, name in enumerate(header):
        columns[name] = np.array([to_float(r[j]) if j < len(r) else np.nan
                                  for r in rows])
    return columns, footer


def require_columns(columns: dict[str, np.ndarray], kind: str, path) -> None:
    if kind not in REQUIRED_COLUMNS:
        raise SchemaError(f"unknown figure kind '{kind}'")
    for name in REQUIRED_COLUMNS[kind]:
        if name not in columns:
            raise SchemaError(f"{path}: column '{name}' required by "
                              f"'{kind}' is missing")
