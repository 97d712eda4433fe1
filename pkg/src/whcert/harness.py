"""Reproduction harness: per-family criterion tables, factor-accuracy
tables, truncation and factor distances, plot data, and rendered figures.

Outputs are deterministic for a fixed configuration (the provenance
timestamp line can be suppressed); every file embeds the exact rational
parameters used.
"""

from __future__ import annotations

import datetime as _dt
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from .accuracy import ACCURACY_CSV_HEADER, AccuracyReport, cor51_bounds, odd_theta_accuracy
from .criterion import (
    CRITERION_CSV_HEADER,
    CriterionReport,
    certify_stability,
    write_criterion_csv,
)
from .exactmath import DEFAULT_TOL, UpperBound, fraction_str, sci_str
from .families import ExampleFamily
from .laurent import LaurentMatrix2, NormBound, wiener_norm_upper
from .report import write_table
from .tailbounds import BoundContext, truncate, truncation_distance

__all__ = ["ReproduceResult", "reproduce", "accuracy_for_report"]


@dataclass(frozen=True)
class FactorDistances:
    n: int
    plus_dist: Fraction | None
    minus_dist: Fraction | None
    plus_step: Fraction | None
    minus_step: Fraction | None


@dataclass(frozen=True)
class ReproduceResult:
    family: ExampleFamily
    reports: list[CriterionReport]
    accuracy: list[AccuracyReport]
    distances: dict[int, Fraction]
    factor_distances: list[FactorDistances]
    distance_ref: int
    factor_ref: int
    files: list[Path]


def accuracy_for_report(rep: CriterionReport, tol: Fraction = DEFAULT_TOL) -> AccuracyReport:
    """Factor-accuracy bounds for one criterion row.

    Even theta with the equal-index stable pattern reduces by the isometric
    shift t**-nu and applies the canonical-factorisation bounds; odd theta is
    reported unavailable.
    """
    theta = sum(rep.indices)
    if theta % 2:
        return odd_theta_accuracy(theta)
    if rep.indices[0] != rep.indices[1]:
        return AccuracyReport(
            None, None, None, None, None, reason="indices are not the stable equal pair"
        )
    norm_a_n = wiener_norm_upper(rep.truncation, tol).bound
    norm_plus = wiener_norm_upper(rep.factorisation.a_plus, tol).bound
    return cor51_bounds(
        rep.delta_n,
        norm_a_n,
        rep.norm_inv_plus.bound,
        rep.norm_inv_minus.bound,
        norm_plus,
        shift=rep.indices[0],
    )


def _fmt_opt(u: UpperBound | None) -> str:
    return sci_str(u.value) if u is not None else ""


def _fmt_frac_opt(x: Fraction | None) -> str:
    return sci_str(x) if x is not None else ""


def reproduce(
    family: ExampleFamily,
    nmax: int,
    out_dir: Path | str,
    *,
    distance_ref: int | None = None,
    factor_ref: int | None = None,
    zeta: tuple[Fraction, Fraction] | None = None,
    eps: Fraction = Fraction(1, 100),
    normalise: str = "auto",
    tol: Fraction = DEFAULT_TOL,
    jobs: int = 1,
    timestamp: bool = True,
    figures: bool = True,
    nmax_limit: int = 40,
) -> ReproduceResult:
    """Run the pipeline for N = 1..nmax and write the table files.

    `distance_ref` (default 40) is the truncation order used as the proxy
    for the full matrix function in the distance columns; `factor_ref`
    (default nmax) plays the same role for factor distances and must not
    exceed nmax.
    """
    if nmax > nmax_limit:
        raise ValueError(f"nmax exceeds the configured limit {nmax_limit}")
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    z = zeta or family.default_zeta
    ctx = BoundContext(z[0], z[1], eps)
    reports = certify_stability(
        family.streams,
        family.theta,
        range(1, nmax + 1),
        ctx,
        eps=eps,
        normalise=normalise,
        tol=tol,
        jobs=jobs,
    )
    accuracy = [accuracy_for_report(r, tol) for r in reports]

    d_ref = distance_ref if distance_ref is not None else max(40, nmax)
    a_ref = truncate(family.streams, family.theta, d_ref)
    distances = {
        r.n: truncation_distance(a_ref, r.truncation, tol).bound.value for r in reports
    }

    f_ref = factor_ref if factor_ref is not None else nmax
    by_n = {r.n: r for r in reports}
    ref_rep = by_n.get(f_ref)
    factor_rows: list[FactorDistances] = []
    for r in reports:
        plus_dist = minus_dist = plus_step = minus_step = None
        if ref_rep is not None and r.factorisation.stable and ref_rep.factorisation.stable:
            if r.factorisation.indices == ref_rep.factorisation.indices:
                plus_dist = wiener_norm_upper(
                    ref_rep.factorisation.a_plus - r.factorisation.a_plus, tol
                ).bound.value
                minus_dist = wiener_norm_upper(
                    ref_rep.factorisation.a_minus - r.factorisation.a_minus, tol
                ).bound.value
        prev = by_n.get(r.n - 1)
        if (
            prev is not None
            and r.factorisation.stable
            and prev.factorisation.stable
            and r.factorisation.indices == prev.factorisation.indices
        ):
            plus_step = wiener_norm_upper(
                r.factorisation.a_plus - prev.factorisation.a_plus, tol
            ).bound.value
            minus_step = wiener_norm_upper(
                r.factorisation.a_minus - prev.factorisation.a_minus, tol
            ).bound.value
        factor_rows.append(FactorDistances(r.n, plus_dist, minus_dist, plus_step, minus_step))

    files: list[Path] = []
    header = [
        f"family={family.id} k1={fraction_str(family.k1)} k2={fraction_str(family.k2)} "
        f"theta={family.theta}",
        f"zeta1={fraction_str(z[0])} zeta2={fraction_str(z[1])} eps={fraction_str(eps)} "
        f"normalise={normalise} tol={fraction_str(tol)} nmax={nmax} "
        f"distance_ref={d_ref} factor_ref={f_ref}",
    ]
    if timestamp:
        header.append(f"generated={_dt.datetime.now(_dt.timezone.utc).isoformat()}")

    p = out_dir / f"{family.id}_criterion.csv"
    write_criterion_csv(p, reports, header)
    files.append(p)

    p = out_dir / f"{family.id}_accuracy.csv"
    rows = [
        [
            str(r.n),
            _fmt_opt(acc.delta_plus),
            _fmt_opt(acc.delta_minus),
            _fmt_opt(acc.gamma_n),
            _fmt_opt(acc.q_plus_n),
            acc.flags if acc.reason != "no accuracy theory for the odd-theta stable case" else "unavailable:odd_theta",
        ]
        for r, acc in zip(reports, accuracy)
    ]
    write_table(p, header, ACCURACY_CSV_HEADER.split(","), rows)
    files.append(p)

    p = out_dir / f"{family.id}_distances.csv"
    rows = [
        [str(r.n), sci_str(r.delta_n.value), sci_str(distances[r.n])] for r in reports
    ]
    write_table(p, header, ["N", "delta_N", f"dist_to_a{d_ref}"], rows)
    files.append(p)

    p = out_dir / f"{family.id}_factor_distances.csv"
    rows = [
        [
            str(f.n),
            _fmt_frac_opt(f.plus_dist),
            _fmt_frac_opt(f.minus_dist),
            _fmt_frac_opt(f.plus_step),
            _fmt_frac_opt(f.minus_step),
        ]
        for f in factor_rows
    ]
    write_table(
        p,
        header,
        ["N", f"plus_dist_to_{f_ref}", f"minus_dist_to_{f_ref}", "plus_step", "minus_step"],
        rows,
    )
    files.append(p)

    plot_dir = out_dir / "plotdata"
    plot_dir.mkdir(exist_ok=True)
    series: dict[str, list[tuple[int, Fraction]]] = {
        "delta_N": [(r.n, r.delta_n.value) for r in reports],
        "q_N": [(r.n, r.q_n.value) for r in reports],
        f"dist_to_a{d_ref}": [(r.n, distances[r.n]) for r in reports],
        "delta_plus": [(r.n, a.delta_plus.value) for r, a in zip(reports, accuracy) if a.delta_plus],
        "delta_minus": [(r.n, a.delta_minus.value) for r, a in zip(reports, accuracy) if a.delta_minus],
        "factor_plus_dist": [(f.n, f.plus_dist) for f in factor_rows if f.plus_dist is not None],
        "factor_minus_dist": [(f.n, f.minus_dist) for f in factor_rows if f.minus_dist is not None],
    }
    import math

    for name, values in series.items():
        p = plot_dir / f"{family.id}_{name}.csv"
        rows = [
            [str(n), f"{math.log10(float(v)):.12g}"]
            for n, v in values
            if v and float(v) > 0
        ]
        write_table(p, header, ["N", "log10_value"], rows)
        files.append(p)

    if figures:
        from .plots import render_family_figures

        files.extend(
            render_family_figures(out_dir, family.id, reports, accuracy, distances, factor_rows, d_ref)
        )

    return ReproduceResult(
        family, reports, accuracy, distances, factor_rows, d_ref, f_ref, files
    )
