"""Figure rendering for the CLI report path.

Figures are written next to the delimited output and never replace it.
"""

from __future__ import annotations

import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

SQRT2 = math.sqrt(2.0)
S3_MAX = 4.0 * SQRT2


def save_sweep_figures(records, stem: Path) -> list:
    """Witness / Svetlichny / derivative panels plus the measure-vs-S3 panel."""
    stem = Path(stem)
    beta = [r.beta for r in records]
    out = []

    fig, axes = plt.subplots(3, 1, figsize=(6.0, 8.5), sharex=True)
    ax = axes[0]
    ax.plot(beta, [r.w2 for r in records], color="crimson")
    ax.axhline(0.0, color="gray", ls="--", lw=0.8)
    ax.axvline(-1.0, color="gray", ls=":", lw=0.8)
    ax.set_ylabel(r"$\langle W_2\rangle$")
    ax = axes[1]
    ax.plot(beta, [r.s3_pure for r in records], color="crimson", label="ideal")
    ax.plot(beta, [r.s3_noisy for r in records], color="royalblue", label="noisy")
    ax.axhline(4.0, color="gray", ls="--", lw=0.8)
    ax.axhline(S3_MAX, color="black", lw=0.8)
    ax.axvline(-1.0, color="gray", ls=":", lw=0.8)
    ax.set_ylabel(r"$|\langle S_3\rangle|$")
    ax.legend(loc="lower right", fontsize=8)
    ax = axes[2]
    ax.plot(beta, [r.ds3_dbeta for r in records], color="crimson")
    ax.axvline(-1.0, color="gray", ls=":", lw=0.8)
    ax.set_ylabel(r"$\partial_\beta |\langle S_3\rangle|$")
    ax.set_xlabel(r"$\beta$")
    fig.tight_layout()
    path = stem.with_name(stem.name + "_curves.png")
    fig.savefig(path, dpi=150)
    plt.close(fig)
    out.append(path)

    fig, axes = plt.subplots(1, 2, figsize=(9.0, 3.6))
    s3 = [r.s3_pure for r in records]
    axes[0].plot(s3, [r.tau3 for r in records], color="royalblue")
    axes[0].axvline(4.0, color="gray", ls="--", lw=0.8)
    axes[0].set_xlabel(r"$|\langle S_3\rangle|$")
    axes[0].set_ylabel(r"$\tau_3$")
    axes[1].plot(s3, [r.n3_pure for r in records], color="royalblue", label="ideal")
    axes[1].plot([r.s3_noisy for r in records], [r.n3_noisy for r in records],
                 color="seagreen", label="noisy")
    axes[1].axvline(4.0, color="gray", ls="--", lw=0.8)
    axes[1].set_xlabel(r"$|\langle S_3\rangle|$")
    axes[1].set_ylabel(r"$\mathcal{N}_3$")
    axes[1].legend(fontsize=8)
    fig.tight_layout()
    path = stem.with_name(stem.name + "_measures.png")
    fig.savefig(path, dpi=150)
    plt.close(fig)
    out.append(path)
    return out


def save_table_figure(rows, stem: Path) -> Path:
    """Inferred tripartite negativity against the measured Svetlichny values."""
    stem = Path(stem)
    fig, ax = plt.subplots(figsize=(5.0, 3.6))
    s3 = [r["s3_exp"] for r in rows]
    n3 = [r["n3"] for r in rows]
    lo = [r["n3"] - r["n3_lo"] for r in rows]
    hi = [r["n3_hi"] - r["n3"] for r in rows]
    xerr = [r["s3_err"] for r in rows]
    ax.errorbar(s3, n3, yerr=[lo, hi], xerr=xerr, fmt="o", color="royalblue",
                capsize=3)
    ax.axvline(4.0, color="gray", ls="--", lw=0.8)
    ax.set_xlabel(r"measured $|\langle S_3\rangle|$")
    ax.set_ylabel(r"inferred $\mathcal{N}_3$")
    fig.tight_layout()
    path = stem.with_name(stem.name + "_table.png")
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def save_montecarlo_figure(rows, stem: Path) -> Path:
    """Monte Carlo estimates with error bars over the beta grid."""
    stem = Path(stem)
    fig, ax = plt.subplots(figsize=(5.5, 3.6))
    beta = [r["beta"] for r in rows]
    ax.errorbar(beta, [r["s3_hat_mean"] for r in rows],
                yerr=[r["s3_hat_std"] for r in rows], fmt="s", ms=3,
                color="royalblue", capsize=2, label="simulated counts")
    ax.plot(beta, [r["s3_true"] for r in rows], color="crimson", lw=1.0,
            label="model")
    ax.axhline(4.0, color="gray", ls="--", lw=0.8)
    ax.set_xlabel(r"$\beta$")
    ax.set_ylabel(r"$|\langle S_3\rangle|$")
    ax.legend(fontsize=8)
    fig.tight_layout()
    path = stem.with_name(stem.name + "_montecarlo.png")
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
