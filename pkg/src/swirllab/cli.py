"""Command line orchestration: run, diagnose, verify, export.

Exit codes: 0 success, 2 configuration error, 3 numerical blow-up,
4 I/O error, 5 verification failure.
"""
from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

import numpy as np

from . import gronwall, solver
from .config import SimConfig, config_from_dict, load_config
from .diagnostics import DiagnosticsParams, diagnose_series, write_csv
from .errors import BlowUpError, ConfigurationError, InsufficientDataError, SchemaError
from .manifest import RunManifest
from .snapshots import read_snapshot, write_snapshot

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_BLOWUP = 3
EXIT_IO = 4
EXIT_VERIFY = 5


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("SWIRLLAB_THREADS", "1")))
    except ValueError:
        return 1


def cmd_run(config_path: str, outdir: str, quiet: bool = False) -> RunManifest:
    cfg = load_config(config_path)
    out = Path(outdir)
    out.mkdir(parents=True, exist_ok=True)
    manifest_path = out / "manifest.json"

    if manifest_path.exists():
        man = RunManifest.load(manifest_path)
        stored = config_from_dict(man.config)
        if stored != cfg:
            raise ConfigurationError(
                f"{manifest_path} was produced with a different configuration; "
                "point -o at a fresh directory")
        last = man.snapshots[-1]
        field, _ = read_snapshot(out / last["path"])
        k = len(man.snapshots)
    else:
        man = RunManifest(config=cfg.to_dict())
        field = solver.init_field(cfg)
        name = "snap_000000.axns"
        write_snapshot(out / name, field, cfg.nu)
        man.add_snapshot(name, field.t)
        k = 1

    next_t = k * cfg.snapshot_every
    try:
        while field.t < cfg.t_end - 1e-12:
            target = min(next_t, cfg.t_end)
            while field.t < target - 1e-12:
                dt = min(solver.cfl_dt(field, cfg), target - field.t)
                last_of_leg = field.t + dt >= target - 1e-12
                field = solver.step(field, cfg, dt=dt,
                                    compute_pressure=last_of_leg)
            name = f"snap_{k:06d}.axns"
            write_snapshot(out / name, field, cfg.nu)
            man.add_snapshot(name, field.t)
            if not quiet:
                print(f"t = {field.t:.6f}  |u|max = {field.speed_max():.4f}")
            k += 1
            next_t = k * cfg.snapshot_every
    except BlowUpError:
        man.save(manifest_path)  # partial manifest for post-mortem reads
        raise
    man.save(manifest_path)
    return man


def _load_fields(man: RunManifest, base: Path):
    fields = []
    for entry in man.snapshots:
        field, _ = read_snapshot(base / entry["path"])
        fields.append(field)
    return fields


def cmd_diagnose(manifest_path: str, N: float | None = None, T: float | None = None,
                 s_min: float | None = None, ds_max: float | None = None,
                 csv_out: str | None = None, quiet: bool = False) -> gronwall.TheoremCheck | None:
    base = Path(manifest_path).parent
    man = RunManifest.load(manifest_path)
    diag_cfg = man.config.get("diagnostics", {})
    N = float(diag_cfg.get("N", 10.0)) if N is None else N
    T = float(diag_cfg.get("T", man.snapshots[-1]["t"])) if T is None else T
    params = DiagnosticsParams(
        s_min=float(diag_cfg.get("s_min", 0.95)) if s_min is None else s_min,
        ds_max=float(diag_cfg.get("ds_max", 0.1)) if ds_max is None else ds_max)

    fields = _load_fields(man, base)
    samples, failures = diagnose_series(fields, params, max_workers=_threads())
    good = [s for s in samples if s is not None]
    if not good:
        raise SchemaError("no snapshot was diagnosable: "
                          + "; ".join(f for f in failures if f))

    # residual over the longest contiguous diagnosable stretch (a failed
    # snapshot breaks the uniform time grid the differencing needs)
    residuals = [float("nan")] * len(samples)
    best_lo = best_hi = 0
    lo = None
    for i, s in enumerate(list(samples) + [None]):
        if s is not None and lo is None:
            lo = i
        if s is None and lo is not None:
            if i - lo > best_hi - best_lo:
                best_lo, best_hi = lo, i
            lo = None
    if best_hi - best_lo >= 3:
        try:
            res, _excluded = gronwall.ode_residual(samples[best_lo:best_hi])
            for j, v in enumerate(res):
                residuals[best_lo + j] = float(v)
        except InsufficientDataError:
            pass

    check = None
    footer = []
    try:
        check = gronwall.theorem_check(good, N=N, T=T)
        footer = check.summary_lines()
    except InsufficientDataError as exc:
        footer = [f"theorem check unavailable: {exc}"]
    for i, reason in enumerate(failures):
        if reason:
            footer.append(f"snapshot {i} skipped: {reason}")

    csv_path = Path(csv_out) if csv_out else base / "diagnostics.csv"
    write_csv(csv_path, samples, residuals, footer)
    man.diagnostics_csv = str(csv_path.name if csv_path.parent == base else csv_path)
    if check is not None:
        man.theorem = {
            "N": check.N, "T": check.T, "M": check.M, "G0": check.G0,
            "premise": check.premise, "branch_F": check.branch_F,
            "branch_G": check.branch_G, "margin_F": check.margin_F,
            "margin_G": check.margin_G,
        }
    man.save(Path(manifest_path))
    if not quiet:
        for line in footer:
            print(line)
    return check


def cmd_verify(seed: int = 0, csv_out: str | None = None,
               mutate_christoffel: bool = False, quiet: bool = False) -> bool:
    from .verify import run_verification_suite
    report = run_verification_suite(seed=seed, mutate_christoffel=mutate_christoffel)
    if not quiet:
        print(report.to_text(), end="")
    if csv_out:
        Path(csv_out).write_text(report.to_csv())
    return report.all_passed


def _verify_matrix_listing() -> str:
    from .verify import DEFAULT_TOLERANCES
    lines = ["checks and tolerances:"]
    for name, tol in DEFAULT_TOLERANCES.items():
        lines.append(f"  {name:22s} tol={tol:.0e}")
    lines.append("field kinds: pure-swirl, poly-noslip, trig-divfree, forced-ns")
    lines.append("frames: circle-S1.00, spiral-S0.99, spiral-S0.97")
    return "\n".join(lines)


def cmd_export(manifest_path: str, csv_out: str, profile_csv: str | None = None,
               at_time: float | None = None, quiet: bool = False) -> None:
    from scipy.interpolate import RectBivariateSpline

    from .solver import boundary_shear
    from .tracking import locate_xi

    base = Path(manifest_path).parent
    man = RunManifest.load(manifest_path)
    fields = _load_fields(man, base)
    if at_time is None:
        peaks = [float(boundary_shear(f).vh_mag.max()) for f in fields]
        field = fields[int(np.argmax(peaks))]
    else:
        times = np.array([f.t for f in fields])
        field = fields[int(np.argmin(np.abs(times - at_time)))]

    sh = boundary_shear(field)
    with np.errstate(invalid="ignore", divide="ignore"):
        dir_r = np.where(sh.valid, -sh.dzutheta / sh.vh_mag, np.nan)
        dir_t = np.where(sh.valid, sh.dzur / sh.vh_mag, np.nan)
    with open(csv_out, "w") as fh:
        fh.write("dist,dz_ur,dz_utheta,vh_mag,S,dir_r,dir_theta\n")
        for i, r in enumerate(sh.r_grid):
            vals = (r, sh.dzur[i], sh.dzutheta[i], sh.vh_mag[i], sh.S[i],
                    dir_r[i], dir_t[i])
            fh.write(",".join("" if not np.isfinite(v) else f"{v:.17g}"
                              for v in vals) + "\n")

    if profile_csv:
        xi, _ = locate_xi(sh)
        k = 3
        spl_t = RectBivariateSpline(field.r, field.z, field.u_theta, kx=k, ky=k)
        spl_r = RectBivariateSpline(field.r, field.z, field.u_r, kx=k, ky=k)
        spl_z = RectBivariateSpline(field.r, field.z, field.u_z, kx=k, ky=k)
        zz = field.z
        xi_v = np.full_like(zz, xi)
        om_r = -spl_t.ev(xi_v, zz, dy=1)
        om_t = spl_r.ev(xi_v, zz, dy=1) - spl_z.ev(xi_v, zz, dx=1)
        om_z = spl_t.ev(xi_v, zz, dx=1) + spl_t.ev(xi_v, zz) / xi
        mag = np.sqrt(om_r**2 + om_t**2 + om_z**2)
        with np.errstate(invalid="ignore", divide="ignore"):
            dr_ = np.where(mag > 0, om_r / mag, np.nan)
            dt_ = np.where(mag > 0, om_t / mag, np.nan)
            dz_ = np.where(mag > 0, om_z / mag, np.nan)
        with open(profile_csv, "w") as fh:
            fh.write("dist,omega_mag,dir_r,dir_theta,dir_z\n")
            for j in range(len(zz)):
                vals = (zz[j], mag[j], dr_[j], dt_[j], dz_[j])
                fh.write(",".join("" if not np.isfinite(v) else f"{v:.17g}"
                                  for v in vals) + "\n")
    if not quiet:
        print(f"exported wall dump at t = {field.t:.6f} to {csv_out}")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="swirllab",
                                 description="axisymmetric swirl boundary-instability lab")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="integrate a configuration, writing snapshots")
    p.add_argument("config")
    p.add_argument("-o", "--output", required=True)
    p.add_argument("-q", "--quiet", action="store_true")

    p = sub.add_parser("diagnose", help="frame diagnostics over stored snapshots")
    p.add_argument("manifest")
    p.add_argument("--N", type=float, default=None)
    p.add_argument("--T", type=float, default=None)
    p.add_argument("--s-min", type=float, default=None)
    p.add_argument("--ds-max", type=float, default=None)
    p.add_argument("-o", "--csv", default=None)
    p.add_argument("-q", "--quiet", action="store_true")

    p = sub.add_parser("verify", help="run the oracle verification suite")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--csv", default=None)
    p.add_argument("--list", action="store_true", help="print the check matrix and exit")
    p.add_argument("--mutate-christoffel", action="store_true",
                   help=argparse.SUPPRESS)  # CI sensitivity hook
    p.add_argument("-q", "--quiet", action="store_true")

    p = sub.add_parser("export", help="export wall-shear and profile CSV dumps")
    p.add_argument("manifest")
    p.add_argument("--csv", required=True)
    p.add_argument("--profile-csv", default=None)
    p.add_argument("--time", type=float, default=None,
                   help="snapshot time (default: peak wall shear)")
    p.add_argument("-q", "--quiet", action="store_true")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "run":
            cmd_run(args.config, args.output, quiet=args.quiet)
            return EXIT_OK
        if args.command == "diagnose":
            cmd_diagnose(args.manifest, N=args.N, T=args.T, s_min=args.s_min,
                         ds_max=args.ds_max, csv_out=args.csv, quiet=args.quiet)
            return EXIT_OK
        if args.command == "verify":
            if args.list:
                print(_verify_matrix_listing())
                return EXIT_OK
            ok = cmd_verify(seed=args.seed, csv_out=args.csv,
                            mutate_christoffel=args.mutate_christoffel,
                            quiet=args.quiet)
            return EXIT_OK if ok else EXIT_VERIFY
        if args.command == "export":
            cmd_export(args.manifest, args.csv, profile_csv=args.profile_csv,
                       at_time=args.time, quiet=args.quiet)
            return EXIT_OK
    except ConfigurationError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except BlowUpError as exc:
        print(f"numerical blow-up: {exc}", file=sys.stderr)
        return EXIT_BLOWUP
    except (OSError, SchemaError) as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO
    raise AssertionError("unreachable")


if __name__ == "__main__":
    sys.exit(main())
