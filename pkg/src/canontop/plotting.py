"""Figures written next to CLI reports (``--figures DIR``)."""

from __future__ import annotations

from math import sqrt
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

GOLDEN = (sqrt(5.0) - 1.0) / 2.0
WIDTH = 5.0

STYLE = {
    "font.size": 9,
    "axes.labelsize": 9,
    "axes.titlesize": 10,
    "xtick.labelsize": 8,
    "ytick.labelsize": 8,
    "axes.spines.top": False,
    "axes.spines.right": False,
    "figure.figsize": (WIDTH, WIDTH * GOLDEN),
    "savefig.dpi": 150,
}


def _new(title):
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots()
    ax.set_title(title)
    return fig, ax


def _save(fig, outdir: Path, stem) -> str:
    outdir.mkdir(parents=True, exist_ok=True)
    path = outdir / f"{stem}.png"
    with plt.rc_context(STYLE):
        fig.tight_layout()
        fig.savefig(path)
    plt.close(fig)
    return str(path)


def betti_figure(rows, outdir: Path, stem="homology", title="Betti numbers", compare=None) -> str:
    """Bar chart of Betti numbers per degree; torsion is annotated above the bars."""
    fig, ax = _new(title)
    degrees = [r["degree"] for r in rows]
    width = 0.38 if compare else 0.6
    ax.bar([d - (width / 2 if compare else 0) for d in degrees], [r["betti"] for r in rows],
           width=width, label="hocolim", color="#4c72b0")
    if compare:
        ax.bar([r["degree"] + width / 2 for r in compare], [r["betti"] for r in compare],
               width=width, label="space", color="#dd8452")
        ax.legend(frameon=False)
    for r in rows:
        if r["torsion"]:
            ax.annotate("+" + "+".join(f"Z/{t}" for t in r["torsion"]), (r["degree"], r["betti"]),
                        ha="center", va="bottom", fontsize=7)
    ax.set_xticks(degrees)
    ax.set_xlabel("degree")
    ax.set_ylabel("rank")
    return _save(fig, outdir, stem)


def level_figure(counts, outdir: Path, stem="levels", title="Simplices per level") -> str:
    fig, ax = _new(title)
    ax.plot(range(len(counts)), counts, marker="o", color="#55a868")
    ax.set_yscale("log")
    ax.set_xlabel("level n")
    ax.set_ylabel("simplices")
    return _save(fig, outdir, stem)


def cover_count_figure(topology_doc, outdir: Path, stem="covers") -> str:
    fig, ax = _new("Covering sieves per object")
    names = list(topology_doc)
    ax.bar(range(len(names)), [len(topology_doc[n]) for n in names], color="#8172b2")
    ax.set_xticks(range(len(names)))
    ax.set_xticklabels(names, rotation=30, ha="right")
    ax.set_ylabel("covering sieves")
    return _save(fig, outdir, stem)


def level_grid_figure(grid, outdir: Path, stem="cylinder_levels") -> str:
    fig, ax = _new("Simplices of the cylinder source, level (n, m)")
    im = ax.imshow(grid, origin="lower", cmap="viridis")
    ax.set_xlabel("vertical m")
    ax.set_ylabel("horizontal n")
    fig.colorbar(im, ax=ax)
    return _save(fig, outdir, stem)


def render_report(command, report, outdir: Path) -> list:
    """Render the figures that make sense for ``command``; returns the paths."""
    out = []
    if command == "hocolim" and "homology" in report:
        out.append(betti_figure(report["homology"], outdir, compare=report.get("space") or report.get("base")))
        out.append(level_figure(report["levels"], outdir))
    elif command == "topology" and "topology" in report:
        out.append(cover_count_figure(report["topology"], outdir))
    elif command == "cylinder" and "levels" in report:
        out.append(level_grid_figure(report["levels"], outdir))
    return out
