"""Optional matplotlib rendering for the CLI report paths.

Figures are written next to the delimited output; nothing here is needed by
the library itself.  The Agg backend keeps this headless.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .errors import ConfigError

__all__ = ["render"]


def _draw_cuts(ax, intervals):
    for a, b in intervals:
        ax.plot([a, b], [0.0, 0.0], color="k", lw=3, solid_capstyle="butt")


def _plot_images(payload, ax):
    _draw_cuts(ax, payload.get("_cuts", ()))
    for im in payload["images"]:
        x, y = im["z"]
        kind = im["kind"]
        marker = {"bright": "^", "dim": "v", "continuum": "s"}.get(kind, "o")
        color = {"bright": "tab:red", "dim": "tab:blue"}.get(kind, "tab:gray")
        ax.plot([x], [y], marker=marker, color=color, ms=8, ls="none")
    sx, sy = payload["source"]
    ax.plot([sx], [sy], marker="*", color="tab:orange", ms=12, ls="none")
    ax.set_xlabel("Re z")
    ax.set_ylabel("Im z")
    ax.set_title("images (triangles) and source (star)")
    ax.set_aspect("equal", adjustable="datalim")


def _plot_countmap(rows, ax):
    xs = sorted({r[0] for r in rows})
    ys = sorted({r[1] for r in rows})
    grid = np.full((len(ys), len(xs)), np.nan)
    ix = {v: i for i, v in enumerate(xs)}
    iy = {v: i for i, v in enumerate(ys)}
    for r in rows:
        grid[iy[r[1]], ix[r[0]]] = r[3]
    mesh = ax.pcolormesh(xs, ys, grid, shading="nearest", cmap="viridis")
    ax.figure.colorbar(mesh, ax=ax, label="bright images")
    ax.set_xlabel("Re u")
    ax.set_ylabel("Im u")
    ax.set_aspect("equal", adjustable="box")


def _plot_xy_rows(rows, ax, xlabel, ylabel, group_col=None):
    if group_col is None:
        ax.plot([r[0] for r in rows], [r[1] for r in rows], lw=1.2)
    else:
        groups = sorted({r[group_col] for r in rows})
        for g in groups:
            sel = [r for r in rows if r[group_col] == g]
            xs = [r[group_col + 1] for r in sel]
            ys = [r[group_col + 2] for r in sel]
            ax.plot(xs, ys, lw=1.2)
            ax.plot(xs, [-v for v in ys], lw=1.2, color=ax.lines[-1].get_color())
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)


def _plot_phasescan(rows, ax):
    # rows: t, phase, label, re, im, kind, residual
    labels = sorted({r[2] for r in rows})
    for lab in labels:
        sel = [r for r in rows if r[2] == lab]
        ts = [r[0] for r in sel]
        pos = [r[3] if abs(r[4]) < abs(r[3]) else r[4] for r in sel]
        ax.plot(ts, pos, marker=".", lw=1.0, label=lab)
    ax.set_xlabel("t")
    ax.set_ylabel("image coordinate")
    ax.legend(fontsize=7, ncol=2)


def render(command: str, payload, path: str) -> None:
    fig, ax = plt.subplots(figsize=(5.0, 4.0))
    try:
        if command == "images":
            _plot_images(payload, ax)
        elif command == "delays":
            _plot_images(payload, ax)
        elif command == "countmap":
            _plot_countmap(payload, ax)
        elif command == "density":
            _plot_xy_rows(payload, ax, "x", "rho")
        elif command == "galaxy":
            _plot_xy_rows(payload, ax, "X", "Y", group_col=0)
        elif command == "phasescan":
            _plot_phasescan(payload, ax)
        else:
            raise ConfigError(f"no figure is defined for the {command} command")
        fig.tight_layout()
        fig.savefig(path, dpi=150)
    finally:
        plt.close(fig)
