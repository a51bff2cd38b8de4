"""The four figure kinds."""
from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from .schema import SchemaError, read_table, require_columns

FIGURE_KINDS = ("shear-profile", "direction-profile", "xi-track", "growth-envelope")


@dataclass
class FigureSpec:
    csv_path: str
    kind: str
    output_path: str
    xlim: tuple[float, float] | None = None
    ylim: tuple[float, float] | None = None
    params: dict = field(default_factory=dict)  # e.g. N, M overrides


def growth_envelope(t: np.ndarray, G0: float, N: float, M: float) -> np.ndarray:
    """Lower envelope e^(M^2 t) (|G0| - N t) measured from the first sample."""
    return np.exp(M * M * t) * (abs(G0) - N * t)


def _finish(fig, ax, spec: FigureSpec) -> str:
    if spec.xlim:
        ax.set_xlim(*spec.xlim)
    if spec.ylim:
        ax.set_ylim(*spec.ylim)
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(spec.output_path, dpi=130)
    plt.close(fig)
    return spec.output_path


def render(spec: FigureSpec) -> str:
    """Render one figure; returns the output path."""
    if spec.kind not in FIGURE_KINDS:
        raise SchemaError(f"unknown figure kind '{spec.kind}'")
    columns, footer = read_table(spec.csv_path)
    require_columns(columns, spec.kind, spec.csv_path)
    fig, ax = plt.subplots(figsize=(6.0, 4.0))

    if spec.kind == "shear-profile":
        ax.plot(columns["dist"], columns["omega_mag"], lw=1.5)
        ax.set_xlabel("distance")
        ax.set_ylabel("|omega|")
        ax.set_title("vorticity magnitude profile")

    elif spec.kind == "direction-profile":
        ax.plot(columns["dist"], columns["dir_r"], lw=1.5, label="radial")
        ax.plot(columns["dist"], columns["dir_theta"], lw=1.5, label="azimuthal")
        if "dir_z" in columns:
            ax.plot(columns["dist"], columns["dir_z"], lw=1.2, label="vertical")
        ax.set_ylim(-1.1, 1.1)
        ax.set_xlabel("distance")
        ax.set_ylabel("vorticity direction components")
        ax.set_title("vorticity direction profile")
        ax.legend(loc="best")

    elif spec.kind == "xi-track":
        ax.plot(columns["t"], columns["xi_r"], lw=1.5, marker=".")
        if "jump_flag" in columns:
            jumps = columns["jump_flag"] > 0.5
            if jumps.any():
                ax.plot(columns["t"][jumps], columns["xi_r"][jumps], "rx",
                        ms=8, label="jump")
                ax.legend(loc="best")
        ax.set_xlabel("t")
        ax.set_ylabel("xi(t)")
        ax.set_title("tracked peak-shear radius")

    else:  # growth-envelope
        t = columns["t"]
        G = columns["G"]
        good = np.isfinite(t) & np.isfinite(G)
        t, G = t[good], G[good]
        ax.set_xlabel("t")
        ax.set_ylabel("|G|")
        ax.set_title("shear growth vs lower envelope")
        if len(t):
            t0 = t[0]
            N = float(spec.params.get("N", footer.get("N", 0.0)))
            M = float(spec.params.get("M", footer.get("M", 0.0)))
            env = growth_envelope(t - t0, G[0], N, M)
            ax.plot(t, np.abs(G), lw=1.8, label="measured |G|")
            ax.plot(t, env, "--", lw=1.4,
                    label=f"envelope e^(M^2 t)(|G0| - N t), N={N:g}, M={M:g}")
            ax.legend(loc="best")

    return _finish(fig, ax, spec)


def render_all(csv_path: str, outdir: str | Path, kinds=FIGURE_KINDS,
               params: dict | None = None) -> list[str]:
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    written = []
    for kind in kinds:
        spec = FigureSpec(csv_path=csv_path, kind=kind,
                          output_path=str(outdir / f"{kind}.png"),
                          params=params or {})
        written.append(render(spec))
    return written
