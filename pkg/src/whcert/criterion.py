"""The stability certificate: if a truncation a_N factorises with the stable
index pattern and q_N = sigma * delta_N * ||a_plus_N**-1|| * ||a_minus_N**-1||
is certified below 1, then the full matrix function admits a stable
factorisation with the same partial indices.

The scan never stops on an unstable truncation: a finite prefix of unstable
truncations proves nothing either way, so the verdict for such N is recorded
and the scan continues.
"""

from __future__ import annotations

import csv
import io
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Sequence

from .errors import NormalisationUnavailableError
from .exactmath import (
    DEFAULT_TOL,
    UpperBound,
    fraction_str,
    sci_str,
    ub_exact,
    ub_mul,
    ub_scale,
)
from .factorise import Factorisation, is_stable, right_factorise
from .laurent import LaurentMatrix2, NormBound, invert_unimodular, wiener_norm_upper
from .normalise import p_normalise
from .reduction import stable_pattern
from .tailbounds import BoundContext, StreamPair, delta_n, optimize_zeta, truncate

__all__ = [
    "CriterionReport",
    "sigma_of",
    "q_n",
    "certify_stability",
    "criterion_csv_rows",
    "CRITERION_CSV_HEADER",
    "write_criterion_csv",
]

CRITERION_CSV_HEADER = "N,delta_N,norm_inv_plus,norm_inv_minus,sigma,q_N,rho1,rho2,verdict"

CERTIFIED_STABLE = "CERTIFIED_STABLE"
NOT_CERTIFIED = "NOT_CERTIFIED"
UNSTABLE_TRUNCATION = "UNSTABLE_TRUNCATION"


def sigma_of(theta: int) -> int:
    """Wiener norm of diag(t**rho1, t**rho2) for the stable pattern: 1 when
    the indices are equal, 2 when they differ by one."""
    return 1 if theta % 2 == 0 else 2


def q_n(
    delta: UpperBound, norm_inv_plus: NormBound, norm_inv_minus: NormBound, sigma: int
) -> UpperBound:
    """Certified q_N = sigma * delta_N * ||a+^-1|| * ||a-^-1||."""
    return ub_scale(ub_mul(ub_mul(delta, norm_inv_plus.bound), norm_inv_minus.bound), sigma)


@dataclass(frozen=True)
class CriterionReport:
    n: int
    delta_n: UpperBound
    norm_inv_plus: NormBound
    norm_inv_minus: NormBound
    sigma: int
    q_n: UpperBound
    indices: tuple[int, int]
    verdict: str
    zeta: tuple[Fraction, Fraction]
    factorisation: Factorisation
    truncation: LaurentMatrix2

    @property
    def certified(self) -> bool:
        return self.verdict == CERTIFIED_STABLE


def _factorise_task(a: LaurentMatrix2) -> Factorisation:
    return right_factorise(a)


def certify_stability(
    streams: StreamPair,
    theta: int,
    n_values: Iterable[int],
    ctx: BoundContext | None = None,
    *,
    eps: Fraction = Fraction(1, 100),
    normalise: str = "auto",
    tol: Fraction = DEFAULT_TOL,
    jobs: int = 1,
) -> list[CriterionReport]:
    """Run the full certificate pipeline for each N.

    With `ctx` fixed, delta_N is evaluated there; with ctx=None the
    (zeta1, zeta2) pair is optimised per N.  `normalise` selects the factor
    normalisation applied to stable truncations before the inverse norms are
    taken ("raw" skips it; any factorisation certifies, normalised factors
    are the ones comparable across N).  Reports are ordered as the input.
    """
    ns = list(n_values)
    truncations = [truncate(streams, theta, n) for n in ns]

    if jobs > 1 and len(ns) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            facts = list(pool.map(_factorise_task, truncations))
    else:
        facts = [right_factorise(a) for a in truncations]

    expected = stable_pattern(theta)
    sigma = sigma_of(theta)
    reports: list[CriterionReport] = []
    for n, a_n, fact in zip(ns, truncations, facts):
        if fact.stable and normalise != "raw":
            try:
                fact = p_normalise(fact, normalise)
            except NormalisationUnavailableError:
                if normalise != "auto":
                    raise
        np_ = wiener_norm_upper(invert_unimodular(fact.a_plus), tol)
        nm_ = wiener_norm_upper(invert_unimodular(fact.a_minus), tol)
        if ctx is None:
            z1, z2, delta = optimize_zeta(streams, n, eps, tol=tol)
        else:
            z1, z2 = ctx.zeta1, ctx.zeta2
            delta = delta_n(streams, n, ctx, tol)
        q = q_n(delta, np_, nm_, sigma)
        if fact.indices != expected:
            verdict = UNSTABLE_TRUNCATION
        elif q.value < 1:
            verdict = CERTIFIED_STABLE
        else:
            verdict = NOT_CERTIFIED
        reports.append(
            CriterionReport(
                n, delta, np_, nm_, sigma, q, fact.indices, verdict, (z1, z2), fact, a_n
            )
        )
    return reports


def criterion_csv_rows(reports: Sequence[CriterionReport]) -> list[list[str]]:
    rows = []
    for r in reports:
        rows.append(
            [
                str(r.n),
                sci_str(r.delta_n.value),
                sci_str(r.norm_inv_plus.bound.value),
                sci_str(r.norm_inv_minus.bound.value),
                str(r.sigma),
                sci_str(r.q_n.value),
                str(r.indices[0]),
                str(r.indices[1]),
                r.verdict,
            ]
        )
    return rows


def write_criterion_csv(
    path: Path | str,
    reports: Sequence[CriterionReport],
    header_comments: Sequence[str] = (),
) -> None:
    path = Path(path)
    buf = io.StringIO()
    for line in header_comments:
        buf.write(f"# {line}\n")
    buf.write(CRITERION_CSV_HEADER + "\n")
    writer = csv.writer(buf, lineterminator="\n")
    for row in criterion_csv_rows(reports):
        writer.writerow(row)
    path.write_text(buf.getvalue(), encoding="utf-8")


def first_certified(reports: Sequence[CriterionReport]) -> CriterionReport | None:
    for r in reports:
        if r.certified:
            return r
    return None
