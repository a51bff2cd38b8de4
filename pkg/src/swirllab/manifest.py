"""Run manifest: what a simulation produced and where it lives."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .errors import SchemaError
from .snapshots import probe_snapshot


@dataclass
class RunManifest:
    config: dict
    snapshots: list[dict] = field(default_factory=list)  # {"path", "t"}
    diagnostics_csv: str | None = None
    theorem: dict | None = None

    def snapshot_times(self) -> list[float]:
        return [s["t"] for s in self.snapshots]

    def add_snapshot(self, path: str | Path, t: float) -> None:
        self.snapshots.append({"path": str(path), "t": float(t)})

    def validate(self, base: Path) -> None:
        times = self.snapshot_times()
        if any(b <= a for a, b in zip(times, times[1:])):
            raise SchemaError("snapshot times are not strictly increasing")
        for entry in self.snapshots:
            p = base / entry["path"]
            if not p.exists():
                raise SchemaError(f"listed snapshot missing: {p}")
            header = probe_snapshot(p)
            if abs(header["t"] - entry["t"]) > 1e-12 * max(1.0, abs(entry["t"])):
                raise SchemaError(
                    f"{p}: stored time {header['t']} disagrees with manifest "
                    f"{entry['t']}")

    def save(self, path: str | Path) -> None:
        doc = {"config": self.config, "snapshots": self.snapshots,
               "diagnostics_csv": self.diagnostics_csv, "theorem": self.theorem}
        Path(path).write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")

    @classmethod
    def load(cls, path: str | Path) -> "RunManifest":
        path = Path(path)
        try:
            doc = json.loads(path.read_text())
        except json.JSONDecodeError as exc:
            raise SchemaError(f"cannot parse manifest {path}: {exc}") from exc
        man = cls(config=doc.get("config", {}),
                  snapshots=doc.get("snapshots", []),
                  diagnostics_csv=doc.get("diagnostics_csv"),
                  theorem=doc.get("theorem"))
        man.validate(path.parent)
        return man
