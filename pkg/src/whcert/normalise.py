"""P-normalisation of stable factorisations.

Factors of a Wiener-Hopf factorisation are unique only up to an ambiguity
group.  For equal indices the factorisation is pinned by a_minus(inf) = I2.
For an index gap of one, uniqueness comes from an LU (or row-permuted LU)
decomposition of the limiting matrix A0 = a_minus(inf): a two-term matrix
polynomial Q(t) = Q0 + Q1/t multiplies a_minus on the right, and its
conjugate by diag(t**rho1, t**rho2) multiplies a_plus on the left.  The
normalised minus factor then has a unit lower-triangular value at infinity
and a vanishing t**-1 coefficient in entry (1,2).

Every normalisation is re-verified exactly before being returned.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NormalisationUnavailableError, VerificationFailedError
from .exactmath import GR_ONE, GR_ZERO, GaussianRational
from .factorise import Factorisation, verify_factorisation
from .laurent import (
    LaurentMatrix2,
    constant_matrix,
    conjugate_by_dr,
    det2,
    invert_unimodular,
    monomial,
    matrix_from_entries,
    zero_scalar,
)

__all__ = ["LUPair", "lu_decompose", "p_normalise", "ambiguity_twist"]

ConstMatrix = tuple[tuple[GaussianRational, ...], ...]

_J2: ConstMatrix = ((GR_ZERO, GR_ONE), (GR_ONE, GR_ZERO))


@dataclass(frozen=True, slots=True)
class LUPair:
    """A0 = L0*U0 (I2 mode) or A0 = J2*L0*U0 (J2 mode), L0 unit lower."""

    l0: ConstMatrix
    u0: ConstMatrix
    permutation: str  # "I2" | "J2"


def _mat_mul(a: ConstMatrix, b: ConstMatrix) -> ConstMatrix:
    return tuple(
        tuple(sum((a[i][k] * b[k][j] for k in range(2)), GR_ZERO) for j in range(2))
        for i in range(2)
    )


def _permute_rows(a: ConstMatrix) -> ConstMatrix:
    return (a[1], a[0])


def lu_decompose(a0: ConstMatrix, mode: str = "I2") -> LUPair:
    """Exact LU with unit lower-triangular L; J2 mode works on the
    row-swapped matrix.  Raises NormalisationUnavailableError on a zero
    pivot for the requested mode."""
    if mode not in ("I2", "J2"):
        raise ValueError(f"unknown LU mode {mode!r}")
    m = a0 if mode == "I2" else _permute_rows(a0)
    if m[0][0].is_zero():
        raise NormalisationUnavailableError(f"{mode} normalisation needs a nonzero pivot")
    factor = m[1][0] / m[0][0]
    l0: ConstMatrix = ((GR_ONE, GR_ZERO), (factor, GR_ONE))
    u0: ConstMatrix = (
        (m[0][0], m[0][1]),
        (GR_ZERO, m[1][1] - factor * m[0][1]),
    )
    if u0[1][1].is_zero():
        raise NormalisationUnavailableError("limiting matrix is singular")
    return LUPair(l0, u0, mode)


def _inv_upper(u: ConstMatrix) -> ConstMatrix:
    det = u[0][0] * u[1][1]
    if det.is_zero():
        raise NormalisationUnavailableError("upper factor is singular")
    return (
        (u[1][1] / det, -u[0][1] / det),
        (GR_ZERO, u[0][0] / det),
    )


def _const_inverse(a: ConstMatrix) -> ConstMatrix:
    det = a[0][0] * a[1][1] - a[0][1] * a[1][0]
    if det.is_zero():
        raise NormalisationUnavailableError("limiting matrix is singular")
    return (
        (a[1][1] / det, -a[0][1] / det),
        (-a[1][0] / det, a[0][0] / det),
    )


def _limit_at_infinity(m: LaurentMatrix2) -> ConstMatrix:
    return m.coeff_matrix(0)


def p_normalise(r: Factorisation, mode: str = "auto") -> Factorisation:
    """Normalise a stable factorisation so the factor pair is unique.

    Equal indices: right-multiply a_minus by A0**-1 so a_minus(inf) = I2.
    Index gap one: the Q(t) = Q0 + Q1/t construction from the LU (I2) or
    permuted LU (J2) decomposition of A0.  `mode` is one of auto / i2 / j2 /
    minus-infinity-identity; auto prefers I2 and falls back to J2.
    """
    rho1, rho2 = r.indices
    if rho2 - rho1 > 1:
        raise NormalisationUnavailableError(
            f"no normalisation for unstable indices {r.indices}"
        )
    original = r.product()
    mode = mode.lower()

    if rho1 == rho2:
        if mode in ("i2", "j2"):
            raise NormalisationUnavailableError(
                f"{mode} normalisation applies to an index gap of one"
            )
        a0 = _limit_at_infinity(r.a_minus)
        inv = _const_inverse(a0)
        out = Factorisation(
            r.a_minus * constant_matrix(inv),
            r.indices,
            constant_matrix(a0) * r.a_plus,
            "minusAtInfinityIdentity",
        )
    else:
        if mode == "minus-infinity-identity":
            raise NormalisationUnavailableError(
                "minus-infinity-identity normalisation applies to equal indices"
            )
        a0 = _limit_at_infinity(r.a_minus)
        if mode == "auto":
            lu_mode = "I2" if not a0[0][0].is_zero() else "J2"
        else:
            lu_mode = mode.upper()
        base = a0 if lu_mode == "I2" else _permute_rows(a0)
        a1 = r.a_minus.coeff_matrix(-1)
        if lu_mode == "J2":
            a1 = _permute_rows(a1)
        lu = lu_decompose(a0, lu_mode)
        q0 = _inv_upper(lu.u0)
        a1q0 = _mat_mul(a1, q0)
        q1_12 = -(a1q0[0][1] / base[0][0])
        q_minus = matrix_from_entries(
            monomial(0, q0[0][0]),
            monomial(0, q0[0][1]) + monomial(-1, q1_12),
            zero_scalar(),
            monomial(0, q0[1][1]),
        )
        c_minus = r.a_minus * q_minus
        c_plus = conjugate_by_dr(invert_unimodular(q_minus), r.indices) * r.a_plus
        out = Factorisation(c_minus, r.indices, c_plus, lu_mode)

    if not (out.product() - original).is_zero():
        raise VerificationFailedError("normalisation broke the product identity")
    rep = verify_factorisation(original, out)
    if not rep.all_ok:
        raise VerificationFailedError(f"normalised factors failed verification: {rep}")
    return out


def ambiguity_twist(r: Factorisation, h: LaurentMatrix2) -> Factorisation:
    """Apply an admissible factor ambiguity: a_minus*H and D**-1 H**-1 D a_plus.

    Equal indices admit any constant invertible H; an index gap of one admits
    H = [[alpha, beta/t], [0, delta]] with alpha, delta nonzero constants.
    The twisted factorisation is verified before being returned.
    """
    rho1, rho2 = r.indices
    d = det2(h)
    if not d.is_constant() or d.is_zero():
        raise ValueError("twist must have a nonzero constant determinant")
    lo, hi = h.support()
    if rho1 == rho2:
        if lo != 0 or hi != 0:
            raise ValueError("equal indices admit only constant twists")
    elif rho2 == rho1 + 1:
        # upper triangular, constant diagonal, t**-1 (plus optionally t**0)
        # in the corner: exactly the twists whose conjugate stays plus-type
        ok = (
            h.entries[1][0].is_zero()
            and h.entries[0][0].is_constant()
            and h.entries[1][1].is_constant()
            and not h.entries[0][0].is_zero()
            and not h.entries[1][1].is_zero()
            and (h.entries[0][1].is_zero() or (h.entries[0][1].pmin >= -1 and h.entries[0][1].pmax <= 0))
        )
        if not ok:
            raise ValueError("index gap one admits [[a, b/t], [0, d]] twists only")
    else:
        raise ValueError("no admissible twists for unstable indices")

    twisted = Factorisation(
        r.a_minus * h,
        r.indices,
        conjugate_by_dr(invert_unimodular(h), r.indices) * r.a_plus,
        "raw",
    )
    rep = verify_factorisation(r.product(), twisted)
    if not rep.all_ok:
        raise VerificationFailedError(f"twisted factorisation failed verification: {rep}")
    return twisted
