"""Binary snapshot format.

Little-endian layout: magic "AXNS", u32 version (= 1), u32 nr, u32 nz,
f64 dr, dz, nu, t, then four row-major f64 arrays (u_r, u_theta, u_z, p),
each nr*nz entries.
"""
from __future__ import annotations

import struct
from pathlib import Path

import numpy as np

from .errors import SchemaError
from .field import AxisymField

MAGIC = b"AXNS"
VERSION = 1
_HEADER = struct.Struct("<4sIII dddd")


def write_snapshot(path: str | Path, field: AxisymField, nu: float) -> None:
    nr, nz = field.nr, field.nz
    header = _HEADER.pack(MAGIC, VERSION, nr, nz, field.dr, field.dz, nu, field.t)
    with open(path, "wb") as fh:
        fh.write(header)
        for a in (field.u_r, field.u_theta, field.u_z, field.p):
            fh.write(np.ascontiguousarray(a, dtype="<f8").tobytes())


def probe_snapshot(path: str | Path) -> dict:
    """Header fields only (no array payload)."""
    with open(path, "rb") as fh:
        raw = fh.read(_HEADER.size)
    if len(raw) != _HEADER.size:
        raise SchemaError(f"{path}: truncated header")
    magic, version, nr, nz, dr, dz, nu, t = _HEADER.unpack(raw)
    if magic != MAGIC:
        raise SchemaError(f"{path}: bad magic {magic!r}")
    if version != VERSION:
        raise SchemaError(f"{path}: unsupported version {version}")
    return {"nr": nr, "nz": nz, "dr": dr, "dz": dz, "nu": nu, "t": t}


def read_snapshot(path: str | Path) -> tuple[AxisymField, float]:
    """Returns (field, nu)."""
    with open(path, "rb") as fh:
        raw = fh.read(_HEADER.size)
        if len(raw) != _HEADER.size:
            raise SchemaError(f"{path}: truncated header")
        magic, version, nr, nz, dr, dz, nu, t = _HEADER.unpack(raw)
        if magic != MAGIC:
            raise SchemaError(f"{path}: bad magic {magic!r}")
        if version != VERSION:
            raise SchemaError(f"{path}: unsupported version {version}")
        count = nr * nz
        arrays = []
        for name in ("u_r", "u_theta", "u_z", "p"):
            buf = fh.read(8 * count)
            if len(buf) != 8 * count:
                raise SchemaError(f"{path}: truncated {name} array")
            arrays.append(np.frombuffer(buf, dtype="<f8").reshape(nr, nz).copy())
    field = AxisymField(t=t, dr=dr, dz=dz,
                        u_r=arrays[0], u_theta=arrays[1], u_z=arrays[2], p=arrays[3])
    return field, nu
