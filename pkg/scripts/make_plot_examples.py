"""Regenerate the example CSVs shipped with the plots package.

Runs a small desk-scale case end to end, exports the wall and vertical
profile dumps at peak shear, and writes a synthetic exponential growth
series that satisfies the reduced law exactly (for the envelope figure).
"""
import sys
import tempfile
from pathlib import Path

import numpy as np

from swirllab import cli
from swirllab.diagnostics import CSV_COLUMNS

ROOT = Path(__file__).resolve().parent.parent
OUT = ROOT / "plots" / "examples"

CONFIG = """
nr = 65
nz = 65
t_end = 0.04
snapshot_every = 0.002

[ic]
r0 = 0.3
z0 = 0.25
a = 0.1
gamma0 = 1.0
w0 = 8.0

[diagnostics]
N = 10.0
T = 0.04
"""


def synthetic_growth_csv(path: Path) -> None:
    M, N, T, G0 = 2.5, 1.5, 0.5, 3.0
    tt = np.linspace(0.0, T, 41)
    G = G0 * np.exp(M * M * tt)
    lines = [",".join(CSV_COLUMNS)]
    for t, g in zip(tt, G):
        row = {name: "" for name in CSV_COLUMNS}
        row.update({"t": f"{t:.17g}", "xi_r": f"{1 / M:.17g}", "jump_flag": "0",
                    "kappa": f"{M:.17g}", "alpha1": f"{g:.17g}", "G": f"{g:.17g}",
                    "F_proof": "0", "F_thm": "0"})
        lines.append(",".join(row[name] for name in CSV_COLUMNS))
    lines.append(f"# N = {N:.17g}")
    lines.append(f"# M = {M:.17g}")
    lines.append(f"# T = {T:.17g}")
    path.write_text("\n".join(lines) + "\n")


def main() -> int:
    OUT.mkdir(parents=True, exist_ok=True)
    synthetic_growth_csv(OUT / "growth_synthetic.csv")
    with tempfile.TemporaryDirectory() as tmp:
        cfg = Path(tmp) / "case.toml"
        cfg.write_text(CONFIG)
        rundir = Path(tmp) / "run"
        if cli.main(["run", str(cfg), "-o", str(rundir), "-q"]) != 0:
            return 1
        if cli.main(["diagnose", str(rundir / "manifest.json"), "-q",
                     "-o", str(OUT / "diagnostics_run.csv")]) != 0:
            return 1
        if cli.main(["export", str(rundir / "manifest.json"),
                     "--csv", str(OUT / "wall_dump.csv"),
                     "--profile-csv", str(OUT / "profile_dump.csv"), "-q"]) != 0:
            return 1
    print(f"wrote example CSVs to {OUT}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
