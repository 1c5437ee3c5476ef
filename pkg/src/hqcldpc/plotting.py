"""Render sweep results as figures next to the CSV output."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

__all__ = ["plot_ber", "plot_avg_iterations", "plot_sweep"]


def plot_ber(points, path, label=None) -> None:
    """BER (log scale) versus Eb/N0, with Wilson interval whiskers."""
    x = [p.ebn0_db for p in points]
    y = [p.ber for p in points]
    lo = [max(p.ber - p.ber_ci_lo, 0.0) for p in points]
    hi = [max(p.ber_ci_hi - p.ber, 0.0) for p in points]
    fig, ax = plt.subplots(figsize=(6, 4.5))
    ax.errorbar(x, y, yerr=[lo, hi], marker="o", capsize=3, label=label)
    ax.set_yscale("log")
    ax.set_xlabel(r"$E_b/N_0$ (dB)")
    ax.set_ylabel("BER")
    ax.grid(True, which="both", linestyle="--", linewidth=0.5)
    if label:
        ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def plot_avg_iterations(points, path, label=None) -> None:
    """Average decoding iterations versus Eb/N0."""
    x = [p.ebn0_db for p in points]
    y = [p.avg_iterations for p in points]
    fig, ax = plt.subplots(figsize=(6, 4.5))
    ax.plot(x, y, marker="s", label=label)
    ax.set_xlabel(r"$E_b/N_0$ (dB)")
    ax.set_ylabel("Average iterations")
    ax.grid(True, linestyle="--", linewidth=0.5)
    if label:
        ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def plot_sweep(points, csv_path, label=None) -> list[str]:
    """Write the standard figure pair alongside a CSV path; returns the paths."""
    import os

    stem, _ = os.path.splitext(str(csv_path))
    ber_path = stem + "_ber.png"
    it_path = stem + "_iters.png"
    plot_ber(points, ber_path, label=label)
    plot_avg_iterations(points, it_path, label=label)
    return [ber_path, it_path]
