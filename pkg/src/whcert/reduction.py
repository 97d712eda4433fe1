"""Reduction of a strictly nonsingular 2x2 matrix function to the canonical
form [[1, beta_minus], [alpha_plus, t**theta + alpha_plus*beta_minus]].

Scalar Wiener-Hopf factorisations of the (1,1) entry and of the determinant
are *inputs*: splitting them requires locating roots relative to the unit
circle over algebraic extensions, which would break the exactness contract.
Given that data, the off-diagonal coefficient functions are obtained by
exact Laurent division, split by the analytic projectors, and reassembled
into the canonical middle factor together with explicit outer factors.  The
collapse of the triple product to the canonical shape is verified exactly
and an error is raised if the represented data contradict it.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InconsistentScalarDataError
from .laurent import (
    LaurentMatrix2,
    LaurentScalar,
    det2,
    matrix_from_entries,
    monomial,
    one_scalar,
    scalar_from_json,
    scalar_to_json,
    zero_scalar,
)

__all__ = [
    "ScalarFactorisationData",
    "ReductionResult",
    "reduce_to_a_form",
    "recompose_indices",
    "stable_pattern",
]


@dataclass(frozen=True, slots=True)
class ScalarFactorisationData:
    """a11 = a11_minus * t**kappa * a11_plus and
    det A = delta_minus * t**(theta + 2*kappa) * delta_plus, exactly."""

    a11_minus: LaurentScalar
    a11_plus: LaurentScalar
    kappa: int
    delta_minus: LaurentScalar
    delta_plus: LaurentScalar
    theta: int

    def to_json(self) -> dict:
        return {
            "a11_minus": scalar_to_json(self.a11_minus),
            "a11_plus": scalar_to_json(self.a11_plus),
            "kappa": self.kappa,
            "delta_minus": scalar_to_json(self.delta_minus),
            "delta_plus": scalar_to_json(self.delta_plus),
            "theta": self.theta,
        }

    @staticmethod
    def from_json(obj: dict) -> "ScalarFactorisationData":
        return ScalarFactorisationData(
            scalar_from_json(obj["a11_minus"]),
            scalar_from_json(obj["a11_plus"]),
            int(obj["kappa"]),
            scalar_from_json(obj["delta_minus"]),
            scalar_from_json(obj["delta_plus"]),
            int(obj["theta"]),
        )


@dataclass(frozen=True, slots=True)
class ReductionResult:
    a: LaurentMatrix2
    kappa: int
    theta: int
    outer_minus: LaurentMatrix2
    outer_plus: LaurentMatrix2
    alpha_plus: LaurentScalar
    beta_minus: LaurentScalar


def stable_pattern(theta: int) -> tuple[int, int]:
    """The only index pair with gap <= 1 summing to theta."""
    nu = theta // 2
    if theta % 2 == 0:
        return (nu, nu)
    return (nu, nu + 1)


def recompose_indices(kappa: int, rho1: int, rho2: int) -> tuple[int, int]:
    """Partial indices of the original matrix from those of the reduced one."""
    if rho1 > rho2:
        raise ValueError("indices must satisfy rho1 <= rho2")
    return (kappa + rho1, kappa + rho2)


def reduce_to_a_form(a_mat: LaurentMatrix2, s: ScalarFactorisationData) -> ReductionResult:
    """Exact reduction to canonical form given scalar factorisation data.

    Raises InconsistentScalarDataError when the supplied scalar data do not
    reproduce a11 and det A, and NonExactDivisionError when a required
    quotient is not finite Laurent data (supply streams in that case).
    """
    a11 = a_mat.entries[0][0]
    a12 = a_mat.entries[0][1]
    a21 = a_mat.entries[1][0]
    a22 = a_mat.entries[1][1]
    delta = det2(a_mat)

    if a11.is_zero() or delta.is_zero():
        raise InconsistentScalarDataError("a11 and det A must be nonzero")
    if (s.a11_minus * s.a11_plus).shift(s.kappa) != a11:
        raise InconsistentScalarDataError("a11 factorisation does not reproduce a11")
    if (s.delta_minus * s.delta_plus).shift(s.theta + 2 * s.kappa) != delta:
        raise InconsistentScalarDataError("determinant factorisation does not reproduce det A")

    # alpha = a11m*a21 / (deltam * t**kappa * a11p), beta symmetric
    alpha = (s.a11_minus * a21).divide_exact((s.delta_minus * s.a11_plus).shift(s.kappa))
    beta = (s.a11_plus * a12).divide_exact((s.delta_plus * s.a11_minus).shift(s.kappa))

    alpha_p = alpha.project_plus()
    alpha_m = alpha.project_minus_zero()
    beta_p = beta.project_plus()
    beta_m = beta.project_minus_zero()

    # middle (2,2) entry must collapse to t**theta + alpha*beta
    w = (a22 * s.a11_minus * s.a11_plus).divide_exact(
        (s.delta_minus * s.delta_plus).shift(s.kappa)
    )
    if w != monomial(s.theta) + alpha * beta:
        raise InconsistentScalarDataError(
            "middle factor does not collapse to the canonical form"
        )

    a_canon = matrix_from_entries(
        one_scalar(),
        beta_m,
        alpha_p,
        monomial(s.theta) + alpha_p * beta_m,
    )

    outer_minus = matrix_from_entries(
        s.a11_minus,
        zero_scalar(),
        (s.delta_minus * alpha_m).divide_exact(s.a11_minus),
        s.delta_minus.divide_exact(s.a11_minus),
    )
    outer_plus = matrix_from_entries(
        s.a11_plus,
        (s.delta_plus * beta_p).divide_exact(s.a11_plus),
        zero_scalar(),
        s.delta_plus.divide_exact(s.a11_plus),
    )

    reassembled = (outer_minus * a_canon * outer_plus).shift(s.kappa)
    if not (reassembled - a_mat).is_zero():
        raise InconsistentScalarDataError("outer factors do not reassemble the input")
    if det2(a_canon) != monomial(s.theta):
        raise InconsistentScalarDataError("reduced matrix determinant is not t**theta")

    return ReductionResult(
        a_canon, s.kappa, s.theta, outer_minus, outer_plus, alpha_p, beta_m
    )
