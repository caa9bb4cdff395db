"""Figure rendering for census reports.

Figures are written to files next to the delimited output; no interactive
backend is ever required.
"""
from __future__ import annotations

from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

from .census import DensityCurve, TupleCountReport  # noqa: E402


def save_density_curve(curve: DensityCurve, path: Path | str) -> Path:
    """Success / failure / inconclusive fractions against the height, with
    two-standard-error bars on the success fraction."""
    path = Path(path)
    heights = [p.height for p in curve.points]
    success = [p.success_fraction for p in curve.points]
    failure = [p.failure_fraction for p in curve.points]
    inconclusive = [p.inconclusive_fraction for p in curve.points]
    err = [2 * p.stderr for p in curve.points]

    fig, ax = plt.subplots(figsize=(6.0, 3.8))
    ax.errorbar(heights, success, yerr=err, marker="o", capsize=3, label="certified")
    ax.plot(heights, failure, marker="s", linestyle="--", label="rational root")
    ax.plot(heights, inconclusive, marker="^", linestyle=":", label="inconclusive")
    if len(heights) > 1 and heights[0] > 0 and max(heights) / max(heights[0], 1) >= 8:
        ax.set_xscale("log")
    ax.set_xlabel("height bound H")
    ax.set_ylabel("fraction of sampled polynomials")
    ax.set_ylim(-0.02, 1.02)
    ax.set_title(f"{curve.kind}, degree {curve.degree}, n={curve.n}, seed {curve.seed}")
    ax.legend(loc="center right", frameon=False)
    ax.spines["right"].set_visible(False)
    ax.spines["top"].set_visible(False)
    fig.savefig(path, bbox_inches="tight", dpi=150)
    plt.close(fig)
    return path


def save_tuple_ratios(reports: Sequence[TupleCountReport], path: Path | str) -> Path:
    """Exact/asymptotic ratio of the lattice counts against the height."""
    path = Path(path)
    heights = [r.height for r in reports]
    ratios = [r.ratio for r in reports]

    fig, ax = plt.subplots(figsize=(6.0, 3.8))
    ax.plot(heights, ratios, marker="o")
    ax.axhline(1.0, color="grey", linewidth=0.8, linestyle="--")
    if len(heights) > 1 and max(heights) / max(heights[0], 1) >= 8:
        ax.set_xscale("log")
    ax.set_xlabel("height bound H")
    ax.set_ylabel("exact / asymptotic")
    ax.set_title(f"lattice count convergence, n={reports[0].n}")
    ax.spines["right"].set_visible(False)
    ax.spines["top"].set_visible(False)
    fig.savefig(path, bbox_inches="tight", dpi=150)
    plt.close(fig)
    return path
