"""Deterministic SVG figures for the empirical-vs-limit comparison."""
from __future__ import annotations

from typing import Sequence

import matplotlib

matplotlib.use("Agg")  # headless; must precede pyplot import

import matplotlib.pyplot as plt  # noqa: E402

# Fixed hash salt so that repeated runs emit byte-identical SVG ids.
matplotlib.rcParams["svg.hashsalt"] = "fareygaps"


def comparison_figure(rows: Sequence, path: str, title: str = "") -> str:
    """Grouped bar chart of empirical vs limiting densities, written as SVG.

    rows are CompareRow records (see density.compare).  The tail bound of
    each limiting value is drawn as an error bar.  Output is deterministic:
    same rows, same bytes.  Returns the path written.
    """
    if not rows:
        raise ValueError("nothing to plot: empty comparison table")
    labels = [",".join(str(v) for v in r.delta) for r in rows]
    emp = [float(r.empirical) for r in rows]
    main = [float(r.main) for r in rows]
    tails = [float(r.tail_bound) for r in rows]
    xs = range(len(rows))
    fig, ax = plt.subplots(figsize=(max(4.0, 0.9 * len(rows) + 1.5), 3.6))
    width = 0.38
    ax.bar([x - width / 2 for x in xs], emp, width, label="empirical",
           color="#3465a4")
    ax.bar([x + width / 2 for x in xs], main, width, label="limit (main)",
           color="#f57900", yerr=tails, capsize=2.5, ecolor="#2e3436")
    ax.set_xticks(list(xs))
    ax.set_xticklabels(labels, rotation=45 if len(labels) > 8 else 0,
                       ha="right" if len(labels) > 8 else "center")
    ax.set_xlabel("gap tuple")
    ax.set_ylabel("density")
    if title:
        ax.set_title(title)
    ax.legend(frameon=False)
    fig.tight_layout()
    # Date metadata is suppressed so identical inputs give identical files.
    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)
    return path
