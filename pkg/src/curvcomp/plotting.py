"""Figure rendering for the report path.

Profile and suite outputs are data first (CSV/JSON); these helpers render
companion matplotlib figures next to them.  Everything uses the Agg backend
so the CLI works headless.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

_STATUS_COLORS = {
    "pass": "tab:green",
    "fail": "tab:red",
    "hypothesis-not-met": "tab:orange",
    "error": "tab:gray",
}


def render_profile_figure(table: dict, path, title=None):
    """Render the radial profile columns as a 2x2 panel figure.

    ``table`` maps the profile column names (r, phi, f, m_f, m_model,
    lambda_min, deficit, A_f, V_f) to equal-length arrays.
    """
    r = np.asarray(table["r"])
    fig, axes = plt.subplots(2, 2, figsize=(9.0, 6.5), sharex=True)

    ax = axes[0, 0]
    ax.plot(r, table["phi"], label="warp")
    ax.plot(r, table["f"], label="weight", linestyle="--")
    ax.set_ylabel("warp / weight")
    ax.legend(fontsize=8)

    ax = axes[0, 1]
    ax.plot(r, table["m_f"], label="weighted mean curvature")
    ax.plot(r, table["m_model"], label="model mean curvature", linestyle="--")
    ax.set_ylabel("mean curvature")
    span = np.percentile(np.abs(np.asarray(table["m_model"])), 90)
    ax.set_ylim(-3.0 * span - 1.0, 3.0 * span + 1.0)
    ax.legend(fontsize=8)

    ax = axes[1, 0]
    ax.plot(r, table["lambda_min"], label="smallest eigenvalue")
    ax.plot(r, table["deficit"], label="deficit", linestyle="--")
    ax.set_xlabel("r")
    ax.set_ylabel("curvature")
    ax.legend(fontsize=8)

    ax = axes[1, 1]
    ax.plot(r, table["A_f"], label="weighted area")
    ax.plot(r, table["V_f"], label="weighted volume", linestyle="--")
    ax.set_xlabel("r")
    ax.set_ylabel("area / volume")
    ax.legend(fontsize=8)

    if title:
        fig.suptitle(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_margin_figure(reports: list, path, title=None):
    """Render suite margins as a horizontal bar chart, colored by status."""
    labels = []
    margins = []
    colors = []
    for rep in reports:
        tid = rep.get("theorem_id", "?")
        labels.append(tid)
        margins.append(rep.get("margin") or 0.0)
        colors.append(_STATUS_COLORS.get(rep.get("status"), "tab:blue"))
    if not labels:
        return
    y = np.arange(len(labels))
    fig, ax = plt.subplots(figsize=(8.0, max(2.5, 0.35 * len(labels) + 1.2)))
    ax.barh(y, margins, color=colors)
    ax.set_yticks(y)
    ax.set_yticklabels(labels, fontsize=7)
    ax.set_xscale("symlog", linthresh=1e-12)
    ax.set_xlabel("margin (rhs - lhs)")
    ax.axvline(0.0, color="black", linewidth=0.8)
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
