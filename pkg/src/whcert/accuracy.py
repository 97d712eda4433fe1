"""Guaranteed error bounds for the approximate factors of a canonical (or
equal-index, shift-reduced) factorisation.

Inputs are certified Wiener-norm upper bounds; outputs are certified upper
bounds on the factor errors.  Three layers:

  * a perturbed-inverse bound ||A**-1 - B**-1|| <= ||A**-1||**2 d / (1-q),
  * the general canonical-factorisation bounds (inverse-plus, minus, and,
    under a stronger radius condition, plus),
  * the truncation specialisation with a_minus(inf) = I2, where the plus
    bound is gated by gamma_N <= 1 and uses the smaller root
    q+ = (1 - sqrt(1 - gamma_N)) / 2.

One-sided rigor throughout: 1 - gamma_N is lower-bounded by 1 minus the
*upper* bound of gamma_N, so a true gamma_N slightly below 1 may still be
reported unavailable, never the other way round.

Equal nonzero indices (theta = 2*nu) are handled by the Wiener-isometric
shift b = t**-nu a; reports carry the shift.  No accuracy statement exists
for the odd-theta stable case, and the module says so explicitly instead of
guessing.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exactmath import (
    UpperBound,
    sqrt_lower,
    sqrt_upper,
    ub_add,
    ub_mul,
    ub_pow,
    ub_recip_one_minus,
    ub_scale,
)

__all__ = [
    "AccuracyReport",
    "perturbed_inverse_bound",
    "general_canonical_bounds",
    "cor51_bounds",
    "odd_theta_accuracy",
    "ACCURACY_CSV_HEADER",
]

ACCURACY_CSV_HEADER = "N,delta_plus,delta_minus,gamma_N,q_plus_N,available_flags"

ODD_THETA_REASON = "no accuracy theory for the odd-theta stable case"


@dataclass(frozen=True)
class AccuracyReport:
    """Certified factor-error bounds; None marks an unavailable item."""

    delta_inv_plus: UpperBound | None
    delta_minus: UpperBound | None
    delta_plus: UpperBound | None
    gamma_n: UpperBound | None
    q_plus_n: UpperBound | None
    shift: int = 0
    reason: str = ""

    @property
    def flags(self) -> str:
        parts = []
        for name, item in (
            ("inv_plus", self.delta_inv_plus),
            ("minus", self.delta_minus),
            ("plus", self.delta_plus),
        ):
            parts.append(name if item is not None else f"!{name}")
        return "|".join(parts)


def perturbed_inverse_bound(
    norm_a_inv: UpperBound, norm_diff: UpperBound, q: UpperBound
) -> UpperBound | None:
    """||A**-1 - B**-1|| <= ||A**-1||**2 ||A - B|| / (1 - q) for
    ||A - B|| <= q/||A**-1||, q < 1.  None when q is not certified below 1."""
    if q.value >= 1:
        return None
    return ub_mul(ub_mul(ub_pow(norm_a_inv, 2), norm_diff), ub_recip_one_minus(q))


def general_canonical_bounds(
    norm_a: UpperBound,
    norm_a0: UpperBound,
    norm_a_plus_inv: UpperBound,
    norm_a_minus_inv: UpperBound,
    norm_a_plus: UpperBound,
    norm_diff: UpperBound,
    q: UpperBound,
) -> AccuracyReport:
    """Factor-error bounds for a canonical factorisation normalised by
    a_minus(inf) = A0, given ||A - B|| <= q / (||A+^-1|| ||A-^-1||), q < 1.

    The plus-factor bound additionally needs the stronger radius condition
    and is reported unavailable when it cannot be certified.
    """
    if q.value >= 1:
        return AccuracyReport(None, None, None, None, None, reason="q >= 1")
    one_minus_q = ub_recip_one_minus(q)
    prod_sq = ub_mul(ub_pow(norm_a_plus_inv, 2), ub_pow(norm_a_minus_inv, 2))

    d_inv_plus = ub_mul(ub_mul(ub_mul(norm_a0, one_minus_q), prod_sq), norm_diff)

    d_minus = ub_mul(
        ub_add(
            norm_a_plus_inv,
            ub_mul(ub_mul(ub_mul(norm_a0, norm_a), one_minus_q), prod_sq),
            ub_mul(
                ub_mul(ub_mul(q, norm_a0), one_minus_q),
                ub_mul(norm_a_plus_inv, norm_a_minus_inv),
            ),
        ),
        norm_diff,
    )

    # stronger radius: ||A-B|| <= q(1-q) / (prod * ||A0|| ||A-^-1|| ||A+|| ||A+^-1||)
    d_plus: UpperBound | None = None
    denom = (
        norm_a_plus_inv.value
        * norm_a_minus_inv.value
        * norm_a0.value
        * norm_a_minus_inv.value
        * norm_a_plus.value
        * norm_a_plus_inv.value
    )
    if denom > 0 and norm_diff.value <= q.value * (1 - q.value) / denom:
        d_plus = ub_mul(
            ub_mul(
                ub_mul(ub_mul(norm_a0, ub_pow(one_minus_q, 2)), ub_pow(norm_a_plus, 2)),
                prod_sq,
            ),
            norm_diff,
        )
    return AccuracyReport(d_inv_plus, d_minus, d_plus, None, None)


def cor51_bounds(
    delta: UpperBound,
    norm_a_n: UpperBound,
    norm_inv_plus: UpperBound,
    norm_inv_minus: UpperBound,
    norm_plus: UpperBound,
    shift: int = 0,
) -> AccuracyReport:
    """Truncation-specialised factor-error bounds, a_minus(inf) = I2.

    q_N = delta * ||a+^-1|| ||a-^-1|| gates the minus bound;
    gamma_N = 4 delta ||a+|| ||a+^-1||**2 ||a-^-1||**2 <= 1 gates the plus
    bound through q+ = (1 - sqrt(1 - gamma_N)) / 2 in (0, 1/2].
    """
    prod = ub_mul(norm_inv_plus, norm_inv_minus)
    prod_sq = ub_pow(prod, 2)
    gamma = ub_scale(ub_mul(ub_mul(delta, norm_plus), prod_sq), 4)

    q = ub_mul(delta, prod)
    if q.value >= 1:
        return AccuracyReport(None, None, None, gamma, None, shift, reason="q_N >= 1")
    one_minus_q = ub_recip_one_minus(q)

    d_inv_plus = ub_mul(ub_mul(prod_sq, one_minus_q), delta)
    d_minus = ub_mul(
        ub_add(
            norm_inv_plus,
            ub_mul(ub_mul(norm_a_n, prod_sq), one_minus_q),
            ub_mul(ub_mul(q, prod), one_minus_q),
        ),
        delta,
    )

    d_plus: UpperBound | None = None
    q_plus: UpperBound | None = None
    head = 1 - gamma.value
    if head > 0:
        # lower bound of sqrt(1 - gamma) makes q+ an upper bound; the gap is
        # certified against the q+ value implied by the *lower* bound of gamma
        root = sqrt_lower(head, Fraction(1, 10**30))
        value = (1 - root) / 2
        head_hi = min(Fraction(1), head + gamma.tolerance)
        floor = (1 - sqrt_upper(head_hi, Fraction(1, 10**30)).value) / 2
        q_plus = UpperBound(value, max(Fraction(0), value - floor))
        recip = ub_recip_one_minus(q_plus)
        d_plus = ub_mul(
            ub_mul(ub_mul(ub_pow(norm_plus, 2), prod_sq), ub_pow(recip, 2)), delta
        )
    reason = "" if d_plus is not None else "gamma_N not certified <= 1"
    return AccuracyReport(d_inv_plus, d_minus, d_plus, gamma, q_plus, shift, reason)


def odd_theta_accuracy(theta: int) -> AccuracyReport:
    """Factor accuracy for the odd-theta stable pattern is an open problem;
    every item is unavailable by construction."""
    if theta % 2 == 0:
        raise ValueError("even theta is handled by cor51_bounds")
    return AccuracyReport(None, None, None, None, None, reason=ODD_THETA_REASON)
