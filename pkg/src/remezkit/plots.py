"""Figure rendering for sweep tables and covering profiles.

Figures are written next to the delimited report; rendering is optional
and never part of the computation path.
"""

from __future__ import annotations

import math

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

from .entropy import CoveringProfile  # noqa: E402


def save_sweep_figure(rows: list[dict], path: str, title: str = "") -> None:
    """Two-panel plot of a degree sweep: omega bounds and the Remez bound."""
    ds = [r["d"] for r in rows]
    lo = [r["omega_lo"] for r in rows]
    hi = [r["omega_hi"] for r in rows]
    rs = [r["remez_upper"] for r in rows]

    fig, (ax1, ax2) = plt.subplots(2, 1, figsize=(6.0, 6.4), sharex=True)
    ax1.plot(ds, lo, "o-", ms=3.5, lw=1.0, color="tab:blue", label="omega lower")
    ax1.plot(ds, hi, "s--", ms=3.0, lw=0.8, color="tab:orange", label="omega upper")
    ax1.set_ylabel("omega_d(Z)")
    ax1.grid(alpha=0.3)
    ax1.legend(fontsize=8)
    if title:
        ax1.set_title(title, fontsize=10)

    finite = [(d, r) for d, r in zip(ds, rs) if r is not None and math.isfinite(r)]
    if finite:
        ax2.semilogy([d for d, _ in finite], [r for _, r in finite], "o-", ms=3.5,
                     lw=1.0, color="tab:red", label="entropy Remez bound")
        ax2.legend(fontsize=8)
    ax2.set_xlabel("degree d")
    ax2.set_ylabel("R_d upper bound")
    ax2.grid(alpha=0.3, which="both")

    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_profile_figure(profile: CoveringProfile, path: str, title: str = "") -> None:
    """Step plot of the covering count eps -> M(eps, Z)."""
    fig, ax = plt.subplots(figsize=(6.0, 3.6))
    if profile.breakpoints:
        xs: list[float] = []
        ys: list[int] = []
        first = profile.breakpoints[0][0]
        left = first / 4.0
        for eps, count in profile.breakpoints:
            xs.extend([left, eps])
            ys.extend([count, count])
            left = eps
        last = profile.breakpoints[-1][0]
        xs.extend([last, last * 2.0])
        ys.extend([profile.tail_count, profile.tail_count])
        ax.plot(xs, ys, lw=1.2, color="tab:blue", drawstyle="steps-post")
        ax.set_xscale("log")
    else:
        ax.axhline(profile.tail_count, lw=1.2, color="tab:blue")
    ax.set_xlabel("eps (cube side length)")
    ax.set_ylabel("M(eps, Z)")
    ax.grid(alpha=0.3, which="both")
    if title:
        ax.set_title(title, fontsize=10)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
