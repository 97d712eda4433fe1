"""Figure rendering for the report path.

Figures are a presentation convenience layered on the plot-data CSVs; the
certified numbers live in the tables.  All axes show log10 of the plotted
quantity against the truncation order N.
"""

from __future__ import annotations

import math
from fractions import Fraction
from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

__all__ = ["render_family_figures"]


def _log_series(pairs: list[tuple[int, Fraction]]) -> tuple[list[int], list[float]]:
    xs, ys = [], []
    for n, v in pairs:
        fv = float(v)
        if fv > 0:
            xs.append(n)
            ys.append(math.log10(fv))
    return xs, ys


def render_family_figures(
    out_dir: Path,
    family_id: str,
    reports,
    accuracy,
    distances: dict[int, Fraction],
    factor_rows,
    distance_ref: int,
) -> list[Path]:
    fig_dir = Path(out_dir) / "figures"
    fig_dir.mkdir(exist_ok=True)
    written: list[Path] = []

    # criterion decay: delta_N and q_N, with the q = 1 threshold
    fig, ax = plt.subplots(figsize=(7, 4.5))
    xs, ys = _log_series([(r.n, r.delta_n.value) for r in reports])
    ax.plot(xs, ys, "o-", ms=3, label=r"$\log_{10}\delta_N$")
    xs, ys = _log_series([(r.n, r.q_n.value) for r in reports])
    ax.plot(xs, ys, "s-", ms=3, label=r"$\log_{10}q_N$")
    ax.axhline(0.0, color="k", lw=0.8, ls="--", label=r"$q_N=1$")
    ax.set_xlabel("N")
    ax.set_ylabel("log10")
    ax.set_title(f"{family_id}: certificate decay")
    ax.legend()
    fig.tight_layout()
    p = fig_dir / f"{family_id}_criterion.png"
    fig.savefig(p, dpi=150)
    plt.close(fig)
    written.append(p)

    # truncation sandwich: certified bound against measured distance
    fig, ax = plt.subplots(figsize=(7, 4.5))
    xs, ys = _log_series([(r.n, r.delta_n.value) for r in reports])
    ax.plot(xs, ys, "o-", ms=3, label=r"$\log_{10}\delta_N$")
    xs, ys = _log_series([(n, d) for n, d in sorted(distances.items())])
    ax.plot(xs, ys, "s-", ms=3, label=rf"$\log_{{10}}\|a_{{{distance_ref}}}-a_N\|_W$")
    ax.set_xlabel("N")
    ax.set_ylabel("log10")
    ax.set_title(f"{family_id}: truncation error vs certified bound")
    ax.legend()
    fig.tight_layout()
    p = fig_dir / f"{family_id}_sandwich.png"
    fig.savefig(p, dpi=150)
    plt.close(fig)
    written.append(p)

    # factor accuracy, when available
    have_acc = any(a.delta_plus or a.delta_minus for a in accuracy)
    have_dist = any(f.plus_dist is not None for f in factor_rows)
    if have_acc or have_dist:
        fig, ax = plt.subplots(figsize=(7, 4.5))
        xs, ys = _log_series(
            [(r.n, a.delta_plus.value) for r, a in zip(reports, accuracy) if a.delta_plus]
        )
        if xs:
            ax.plot(xs, ys, "o-", ms=3, label=r"$\log_{10}\delta_+^{(N)}$")
        xs, ys = _log_series(
            [(r.n, a.delta_minus.value) for r, a in zip(reports, accuracy) if a.delta_minus]
        )
        if xs:
            ax.plot(xs, ys, "s-", ms=3, label=r"$\log_{10}\delta_-^{(N)}$")
        xs, ys = _log_series(
            [(f.n, f.plus_dist) for f in factor_rows if f.plus_dist is not None]
        )
        if xs:
            ax.plot(xs, ys, "^--", ms=3, label="log10 plus-factor distance")
        xs, ys = _log_series(
            [(f.n, f.minus_dist) for f in factor_rows if f.minus_dist is not None]
        )
        if xs:
            ax.plot(xs, ys, "v--", ms=3, label="log10 minus-factor distance")
        ax.set_xlabel("N")
        ax.set_ylabel("log10")
        ax.set_title(f"{family_id}: factor accuracy")
        ax.legend()
        fig.tight_layout()
        p = fig_dir / f"{family_id}_factors.png"
        fig.savefig(p, dpi=150)
        plt.close(fig)
        written.append(p)
    return written
