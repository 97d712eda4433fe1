"""Truncations a_N of the canonical matrix function and certified bounds on
the truncation error in the Wiener norm.

A coefficient stream supplies exact Q(i) Laurent coefficients on one side of
the circle together with a certified majorant M(zeta) for the generating
function on |t| = zeta.  Cauchy's inequalities then bound both the full norm
and the tail beyond degree N:

    plus side:   ||alpha||  <= zeta2*M+(zeta2)/(zeta2-1)
                 tail       <= M+(zeta2)/(zeta2**N (zeta2-1))
    minus side:  ||beta||   <= zeta1*M-(zeta1)/(1-zeta1)
                 tail       <= zeta1**(N+1)*M-(zeta1)/(1-zeta1)

and the truncation error of the assembled 2x2 matrix obeys

    delta_N = (1 + ||alpha|| bound) * beta tail + (1 + ||beta|| bound) * alpha tail.

The (zeta1, zeta2) pair is free within the annulus of analyticity; a
derivative-free grid search with local refinement picks a good admissible
point.  Any admissible point yields a valid certificate, so the optimiser
only affects tightness, never soundness.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .errors import InadmissibleZetaError
from .exactmath import (
    DEFAULT_TOL,
    GaussianRational,
    UpperBound,
    as_fraction,
    ub_add,
    ub_compress,
    ub_exact,
    ub_mul,
    ub_scale,
)
from .laurent import (
    LaurentMatrix2,
    LaurentScalar,
    NormBound,
    det2,
    matrix_from_entries,
    monomial,
    one_scalar,
    wiener_norm_upper,
)

__all__ = [
    "CoefficientStream",
    "StreamPair",
    "BoundContext",
    "GridSpec",
    "truncate",
    "tail_norm_bounds",
    "delta_n",
    "optimize_zeta",
    "truncation_distance",
    "finite_plus_stream",
    "finite_minus_stream",
]

Majorant = Callable[[Fraction, Fraction], UpperBound]


@dataclass(frozen=True)
class CoefficientStream:
    """One side of the canonical matrix function.

    `coeff(n)` returns the exact coefficient of t**n (plus side, n >= 0) or
    t**-n (minus side, n >= 1).  `radius` is r2 for the plus side (None for
    an entire function) and r1 for the minus side (0 when analytic in the
    punctured plane).  `closed_endpoint` states whether the majorant stays
    valid on |t| = radius itself.  `approx_budget` is the per-coefficient
    error bound eta for streams whose true coefficients are not in Q(i);
    zero for exact streams.
    """

    side: str  # "plus" | "minus"
    coeff: Callable[[int], GaussianRational]
    radius: Fraction | None
    majorant: Majorant
    closed_endpoint: bool = False
    approx_budget: Fraction = Fraction(0)

    def admissible(self, zeta: Fraction) -> bool:
        zeta = as_fraction(zeta)
        if self.side == "plus":
            if zeta <= 1:
                return False
            if self.radius is None:
                return True
            return zeta < self.radius or (self.closed_endpoint and zeta == self.radius)
        if zeta >= 1 or zeta <= 0:
            return False
        if self.radius is None or self.radius == 0:
            return True
        return zeta > self.radius or (self.closed_endpoint and zeta == self.radius)

    def check_admissible(self, zeta: Fraction) -> None:
        if not self.admissible(zeta):
            raise InadmissibleZetaError(
                f"zeta={zeta} is not admissible for the {self.side} stream"
            )


@dataclass(frozen=True)
class StreamPair:
    plus: CoefficientStream
    minus: CoefficientStream


@dataclass(frozen=True)
class BoundContext:
    """An admissible (zeta1, zeta2) pair plus the compact-rectangle margin."""

    zeta1: Fraction
    zeta2: Fraction
    eps: Fraction = Fraction(1, 100)

    def validate(self, streams: StreamPair) -> None:
        streams.minus.check_admissible(self.zeta1)
        streams.plus.check_admissible(self.zeta2)


# --------------------------------------------------------------------------
# Truncation
# --------------------------------------------------------------------------


def _plus_poly(stream: CoefficientStream, n: int) -> LaurentScalar:
    return LaurentScalar.make(0, [stream.coeff(k) for k in range(n + 1)])


def _minus_poly(stream: CoefficientStream, n: int) -> LaurentScalar:
    if n < 1:
        return LaurentScalar.make(0, [])
    return LaurentScalar.make(-n, [stream.coeff(n - j) for j in range(n)])


def truncate(streams: StreamPair, theta: int, n: int) -> LaurentMatrix2:
    """a_N = [[1, beta_N], [alpha_N, t**theta + alpha_N*beta_N]] with the
    plus side truncated to degrees 0..N and the minus side to -N..-1."""
    if n < 0:
        raise ValueError("truncation order must be nonnegative")
    alpha = _plus_poly(streams.plus, n)
    beta = _minus_poly(streams.minus, n)
    mat = matrix_from_entries(
        one_scalar(), beta, alpha, monomial(theta) + alpha * beta
    )
    if det2(mat) != monomial(theta):
        raise AssertionError("truncation lost the monomial determinant")
    return mat


# --------------------------------------------------------------------------
# Tail bounds
# --------------------------------------------------------------------------


def tail_norm_bounds(
    stream: CoefficientStream, zeta: Fraction, n: int, tol: Fraction = DEFAULT_TOL
) -> tuple[UpperBound, UpperBound]:
    """(certified norm bound, certified tail bound beyond order n)."""
    zeta = as_fraction(zeta)
    stream.check_admissible(zeta)
    m = stream.majorant(zeta, tol)
    if stream.side == "plus":
        norm = ub_scale(m, zeta / (zeta - 1))
        tail = ub_scale(m, 1 / (zeta**n * (zeta - 1)))
    else:
        norm = ub_scale(m, zeta / (1 - zeta))
        tail = ub_scale(m, zeta ** (n + 1) / (1 - zeta))
    return norm, tail


def delta_n(
    streams: StreamPair,
    n: int,
    ctx: BoundContext,
    tol: Fraction = DEFAULT_TOL,
    compress: bool = False,
) -> UpperBound:
    """Certified upper bound of ||a - a_N||_W at the context's (zeta1, zeta2);
    monotone nonincreasing in N for a fixed admissible context."""
    ctx.validate(streams)
    alpha_norm, alpha_tail = tail_norm_bounds(streams.plus, ctx.zeta2, n, tol)
    beta_norm, beta_tail = tail_norm_bounds(streams.minus, ctx.zeta1, n, tol)
    out = ub_add(
        ub_mul(ub_add(1, alpha_norm), beta_tail),
        ub_mul(ub_add(1, beta_norm), alpha_tail),
    )
    eta = streams.plus.approx_budget + streams.minus.approx_budget
    if eta:
        # declared-budget correction: the assembled truncation uses
        # approximate coefficients, so ||a_N - a_N~|| is added on top
        d_alpha = (n + 1) * streams.plus.approx_budget
        d_beta = n * streams.minus.approx_budget
        alpha_tilde = ub_add(alpha_norm, d_alpha)
        out = ub_add(
            out,
            ub_mul(ub_add(1, beta_norm), ub_exact(d_alpha)),
            ub_mul(ub_add(1, alpha_tilde), ub_exact(d_beta)),
        )
    return ub_compress(out) if compress else out


# --------------------------------------------------------------------------
# (zeta1, zeta2) optimisation
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class GridSpec:
    coarse: int = 32
    refine: int = 9
    rounds: int = 2
    cap: Fraction = Fraction(16)  # zeta2 search cap for entire plus sides
    floor_div: int = 16  # zeta1 floor is 1/floor_div when r1 = 0


def _interval_minus(stream: CoefficientStream, eps: Fraction, spec: GridSpec) -> tuple[Fraction, Fraction]:
    hi = 1 - eps
    r1 = stream.radius if stream.radius is not None else Fraction(0)
    if r1 == 0:
        lo = Fraction(1, spec.floor_div)
    elif stream.closed_endpoint:
        lo = r1
    else:
        lo = r1 + (1 - r1) / (4 * spec.coarse)
    if lo > hi:
        raise InadmissibleZetaError("empty zeta1 rectangle; shrink eps")
    return lo, hi


def _interval_plus(stream: CoefficientStream, eps: Fraction, spec: GridSpec) -> tuple[Fraction, Fraction]:
    lo = 1 + eps
    if stream.radius is None:
        hi = spec.cap
    elif stream.closed_endpoint:
        hi = stream.radius
    else:
        hi = stream.radius - (stream.radius - 1) / (4 * spec.coarse)
    if lo > hi:
        raise InadmissibleZetaError("empty zeta2 rectangle; shrink eps")
    return lo, hi


def _grid(lo: Fraction, hi: Fraction, count: int) -> list[Fraction]:
    if lo == hi or count <= 1:
        return [lo]
    step = (hi - lo) / (count - 1)
    return [lo + k * step for k in range(count)]


def optimize_zeta(
    streams: StreamPair,
    n: int,
    eps: Fraction = Fraction(1, 100),
    spec: GridSpec = GridSpec(),
    tol: Fraction = DEFAULT_TOL,
) -> tuple[Fraction, Fraction, UpperBound]:
    """Coarse grid plus local refinement over the admissible rectangle.

    Returns the best grid point and its certified delta_N.  All coordinates
    are rational; any returned point is admissible, so the result is always
    a valid (if possibly suboptimal) certificate.
    """
    eps = as_fraction(eps)
    lo1, hi1 = _interval_minus(streams.minus, eps, spec)
    lo2, hi2 = _interval_plus(streams.plus, eps, spec)

    def value(z1: Fraction, z2: Fraction) -> UpperBound:
        return delta_n(streams, n, BoundContext(z1, z2, eps), tol, compress=True)

    best: tuple[Fraction, Fraction, UpperBound] | None = None
    zs1 = _grid(lo1, hi1, spec.coarse)
    zs2 = _grid(lo2, hi2, spec.coarse)
    for z1 in zs1:
        for z2 in zs2:
            v = value(z1, z2)
            if best is None or v.value < best[2].value:
                best = (z1, z2, v)
    assert best is not None

    for _ in range(spec.rounds):
        z1c, z2c, _ = best
        span1 = (hi1 - lo1) / (spec.coarse - 1) if spec.coarse > 1 else Fraction(0)
        span2 = (hi2 - lo2) / (spec.coarse - 1) if spec.coarse > 1 else Fraction(0)
        zs1 = _grid(max(lo1, z1c - span1), min(hi1, z1c + span1), spec.refine)
        zs2 = _grid(max(lo2, z2c - span2), min(hi2, z2c + span2), spec.refine)
        for z1 in zs1:
            for z2 in zs2:
                v = value(z1, z2)
                if v.value < best[2].value:
                    best = (z1, z2, v)
    return best


# --------------------------------------------------------------------------
# Empirical truncation distances
# --------------------------------------------------------------------------


def truncation_distance(a_n0: LaurentMatrix2, a_n: LaurentMatrix2, tol: Fraction = DEFAULT_TOL) -> NormBound:
    """Certified ||a_N0 - a_N||_W; exact whenever entry moduli are rational.
    Used to validate delta_N empirically (the truncation sandwich)."""
    return wiener_norm_upper(a_n0 - a_n, tol)


# --------------------------------------------------------------------------
# Finite streams (embedded coefficient lists)
# --------------------------------------------------------------------------


def finite_plus_stream(coeffs: list[GaussianRational]) -> CoefficientStream:
    """Plus stream of a polynomial: entire, with the exact finite majorant
    M(zeta) = sum |c_k| zeta**k."""
    data = list(coeffs)

    def coeff(k: int) -> GaussianRational:
        return data[k] if 0 <= k < len(data) else GaussianRational.of(0)

    def maj(zeta: Fraction, tol: Fraction) -> UpperBound:
        from .exactmath import abs_upper

        per = tol / max(1, len(data))
        return ub_add(
            *(ub_scale(abs_upper(c, per), zeta**k) for k, c in enumerate(data))
        ) if data else ub_exact(0)

    return CoefficientStream("plus", coeff, None, maj, closed_endpoint=False)


def finite_minus_stream(coeffs: list[GaussianRational]) -> CoefficientStream:
    """Minus stream with coefficients c_1.., c_n for t**-1..t**-n; analytic in
    the punctured plane with exact majorant sum |c_k| zeta**-k."""
    data = list(coeffs)

    def coeff(k: int) -> GaussianRational:
        return data[k - 1] if 1 <= k <= len(data) else GaussianRational.of(0)

    def maj(zeta: Fraction, tol: Fraction) -> UpperBound:
        from .exactmath import abs_upper

        per = tol / max(1, len(data))
        return ub_add(
            *(ub_scale(abs_upper(c, per), zeta ** (-(k + 1))) for k, c in enumerate(data))
        ) if data else ub_exact(0)

    return CoefficientStream("minus", coeff, Fraction(0), maj, closed_endpoint=False)
