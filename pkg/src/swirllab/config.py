"""Run configuration: dataclasses plus TOML loading."""
from __future__ import annotations

import math
from dataclasses import dataclass, field, asdict
from pathlib import Path

try:
    import tomllib
except ModuleNotFoundError:
    import tomli as tomllib

from .errors import ConfigurationError


@dataclass(frozen=True)
class VortexRingIC:
    """Gaussian vortex ring (azimuthal vorticity) plus Gaussian swirl blob."""

    r0: float = 0.3
    z0: float = 0.25
    a: float = 0.1
    gamma0: float = 1.0
    w0: float = 8.0


@dataclass(frozen=True)
class DiagnosticsConfig:
    N: float = 10.0
    T: float = 0.04
    s_min: float = 0.95
    ds_max: float = 0.1


@dataclass(frozen=True)
class SimConfig:
    nr: int = 129
    nz: int = 129
    r_max: float = 1.0
    z_max: float = 1.0
    nu: float = 1.0
    cfl: float = 0.4
    t_end: float = 0.04
    snapshot_every: float = 0.002
    proj_tol: float = 1e-8
    ic: VortexRingIC = field(default_factory=VortexRingIC)
    diagnostics: DiagnosticsConfig = field(default_factory=DiagnosticsConfig)

    @property
    def dr(self) -> float:
        return self.r_max / (self.nr - 1)

    @property
    def dz(self) -> float:
        return self.z_max / (self.nz - 1)

    def validate(self) -> "SimConfig":
        if self.nr < 16 or self.nz < 16:
            raise ConfigurationError(f"grid too small: nr={self.nr}, nz={self.nz} (need >= 16)")
        if self.r_max <= 0 or self.z_max <= 0:
            raise ConfigurationError("domain extents must be positive")
        if self.nu <= 0:
            raise ConfigurationError(f"nu={self.nu} must be positive")
        if not 0 < self.cfl < 1:
            raise ConfigurationError(f"cfl={self.cfl} must lie in (0, 1)")
        if self.t_end <= 0:
            raise ConfigurationError("t_end must be positive")
        if self.snapshot_every <= 0:
            raise ConfigurationError("snapshot_every must be positive")
        if self.proj_tol <= 0:
            raise ConfigurationError("proj_tol must be positive")
        ic = self.ic
        if ic.a <= 0:
            raise ConfigurationError("core radius a must be positive")
        if not (0 < ic.r0 - 2 * ic.a and ic.r0 + 2 * ic.a < self.r_max
                and 0 < ic.z0 - 2 * ic.a and ic.z0 + 2 * ic.a < self.z_max):
            raise ConfigurationError(
                "vortex core must sit strictly inside the domain with a 2a margin")
        for name in ("r_max", "z_max", "nu", "cfl", "t_end", "snapshot_every"):
            if not math.isfinite(getattr(self, name)):
                raise ConfigurationError(f"{name} is not finite")
        return self

    def to_dict(self) -> dict:
        return asdict(self)


def _take(table: dict, cls, **extra):
    fields = cls.__dataclass_fields__
    kwargs = {}
    for key, val in table.items():
        if key not in fields:
            raise ConfigurationError(f"unknown config key '{key}' for {cls.__name__}")
        kwargs[key] = val
    kwargs.update(extra)
    return cls(**kwargs)


def config_from_dict(data: dict) -> SimConfig:
    data = dict(data)
    ic = _take(data.pop("ic", {}), VortexRingIC)
    diag = _take(data.pop("diagnostics", {}), DiagnosticsConfig)
    cfg = _take(data, SimConfig, ic=ic, diagnostics=diag)
    return cfg.validate()


def load_config(path: str | Path) -> SimConfig:
    with open(path, "rb") as fh:
        try:
            data = tomllib.load(fh)
        except tomllib.TOMLDecodeError as exc:
            raise ConfigurationError(f"cannot parse {path}: {exc}") from exc
    return config_from_dict(data)
