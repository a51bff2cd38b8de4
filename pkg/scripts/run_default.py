"""End-to-end default experiment: run, diagnose, export, report.

Usage: python scripts/run_default.py [outdir] [config]
"""
import sys
from pathlib import Path

from swirllab import cli

ROOT = Path(__file__).resolve().parent.parent


def main() -> int:
    outdir = sys.argv[1] if len(sys.argv) > 1 else "out/default"
    config = sys.argv[2] if len(sys.argv) > 2 else str(ROOT / "configs" / "default.toml")
    rc = cli.main(["run", config, "-o", outdir])
    if rc:
        return rc
    manifest = str(Path(outdir) / "manifest.json")
    rc = cli.main(["diagnose", manifest])
    if rc:
        return rc
    return cli.main(["export", manifest,
                     "--csv", str(Path(outdir) / "wall_dump.csv"),
                     "--profile-csv", str(Path(outdir) / "profile_dump.csv")])


if __name__ == "__main__":
    sys.exit(main())
