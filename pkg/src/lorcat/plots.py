"""Figure rendering for the report command.

Renders the count-versus-separation staircase of a sweep and a profile
gallery for a solved boundary pair to image files next to the CSV data.
Uses the non-interactive Agg backend so it works headless.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from .counting import SolutionSet, SweepPoint
from .geometry import profile_eval

__all__ = ["render_sweep_figure", "render_profile_figure"]


def render_sweep_figure(series: list[SweepPoint], path, cell: str = "TE") -> None:
    """Staircase of raw and deduped counts with the subfamily breakdown."""
    h = np.array([p.h for p in series])
    fig, (top, bottom) = plt.subplots(2, 1, figsize=(7.0, 6.0), sharex=True)

    top.step(h, [p.deduped_count for p in series], where="post", lw=1.8, label="deduped")
    top.step(
        h,
        [p.raw_count for p in series],
        where="post",
        lw=1.0,
        ls="--",
        color="gray",
        label="raw",
    )
    tang = [p.h for p in series if p.tangential]
    if tang:
        top.plot(tang, np.zeros(len(tang)), "r^", ms=5, label="tangential")
    top.set_ylabel("catenoid count")
    top.set_title(f"{cell}: number of catenoids vs separation")
    top.legend(loc="upper left")
    top.grid(True, alpha=0.3)

    for key in ("1a", "1b", "2a", "2b"):
        bottom.step(
            h, [p.subfamily_counts.get(key, 0) for p in series], where="post", label=key
        )
    bottom.set_xlabel("half separation h")
    bottom.set_ylabel("per-subfamily count")
    bottom.legend(loc="upper left", ncol=4)
    bottom.grid(True, alpha=0.3)

    fig.tight_layout()
    fig.savefig(Path(path), dpi=150)
    plt.close(fig)


def render_profile_figure(
    sset: SolutionSet, s_lo: float, s_hi: float, path, targets=None
) -> None:
    """Profile curves of the solutions over the spanning interval."""
    fig, ax = plt.subplots(figsize=(6.0, 4.5))
    s = np.linspace(s_lo, s_hi, 400)
    for i, spec in enumerate(sset.solutions):
        f, _, _ = profile_eval(spec.profile, s)
        label = f"a={spec.profile.a:.4g}"
        if spec.subfamily:
            label += f" ({spec.subfamily})"
        ax.plot(s, f, lw=1.4, label=label)
    if targets:
        for s_i, value in targets:
            ax.plot([s_i], [value], "ko", ms=5)
            ax.plot([s_i], [-value], "ko", ms=3, mfc="none")
    ax.axhline(0.0, color="gray", lw=0.6)
    ax.set_xlabel("axis coordinate")
    ax.set_ylabel("profile value")
    ax.set_title(f"{sset.case}: {sset.raw_count} profile(s)")
    if sset.solutions:
        ax.legend(loc="best", fontsize=8)
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(Path(path), dpi=150)
    plt.close(fig)
