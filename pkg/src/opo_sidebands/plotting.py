"""Deterministic SVG figures from sweep tables.

Matplotlib embeds hashed ids and a timestamp in SVG output by default; both
are pinned here so identical inputs produce byte-identical files.
"""

from __future__ import annotations

from collections import defaultdict

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

_HASH_SALT = "opo-sidebands"


def plot_witness_curves(rows, output_path: str, family: str | None = None, title: str | None = None) -> int:
    """Plot min PT symplectic eigenvalue against pump power for each bipartition.

    ``rows`` are dicts with sigma, bipartition, family, nu_min keys.  Returns
    the number of curves drawn.
    """
    curves: dict[str, list[tuple[float, float]]] = defaultdict(list)
    for row in rows:
        if family is not None and row["family"] != family:
            continue
        curves[row["bipartition"]].append((row["sigma"], row["nu_min"]))

    with matplotlib.rc_context({"svg.hashsalt": _HASH_SALT}):
        fig, ax = plt.subplots(figsize=(7.0, 4.5))
        for label in sorted(curves):
            points = sorted(curves[label])
            ax.plot([p[0] for p in points], [p[1] for p in points], label=label)
        ax.axhline(1.0, color="0.4", linestyle="--", linewidth=1.0)
        ax.set_xlabel(r"pump power $\sigma$ (threshold units)")
        ax.set_ylabel(r"min PT symplectic eigenvalue $\tilde\nu_{\min}$")
        if title is None:
            title = family if family is not None else "all bipartitions"
        ax.set_title(title)
        if curves and len(curves) <= 12:
            ax.legend(fontsize="small")
        fig.tight_layout()
        fig.savefig(output_path, format="svg", metadata={"Date": None})
        plt.close(fig)
    return len(curves)
