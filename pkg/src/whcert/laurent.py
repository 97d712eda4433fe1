"""Laurent polynomials and 2x2 Laurent matrix polynomials over Q(i).

Coefficients are stored densely over an explicit support window
[pmin, pmin + len(coeffs) - 1]; canonical values carry no zero extremal
coefficients.  At the scale this pipeline works with (|powers| <= ~80 after
truncation) dense storage beats anything sparse.

The module also provides the analytic projectors (nonnegative part,
nonpositive part, strictly negative part), certified Wiener-norm upper
bounds (sum over k of maximum column sums), monomial-determinant detection
and adjugate inversion of unimodular matrices, plus the LMP-JSON wire
format.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .errors import NonConstantDeterminantError, NonExactDivisionError, NotMonomialDetError
from .exactmath import (
    DEFAULT_TOL,
    GR_ONE,
    GR_ZERO,
    GaussianRational,
    UpperBound,
    abs_upper,
    as_fraction,
    gr_from_json,
    gr_to_json,
    ub_add,
    ub_exact,
    ub_max,
)

__all__ = [
    "LaurentScalar",
    "LaurentMatrix2",
    "NormBound",
    "zero_scalar",
    "one_scalar",
    "monomial",
    "identity2",
    "constant_matrix",
    "matrix_from_entries",
    "scalar_norm_upper",
    "wiener_norm_upper",
    "det2",
    "monomial_winding",
    "invert_unimodular",
    "value_at_infinity",
    "conjugate_by_dr",
    "lmp_to_json",
    "lmp_from_json",
    "lmp_dumps",
    "lmp_loads",
]


@dataclass(frozen=True, slots=True)
class LaurentScalar:
    """A Laurent polynomial sum_k c_k t^k with finite support.

    `coeffs[j]` is the coefficient of t^(pmin + j).  The zero polynomial is
    the empty tuple with pmin == 0.
    """

    pmin: int
    coeffs: tuple[GaussianRational, ...]

    # -- construction -------------------------------------------------

    @staticmethod
    def make(pmin: int, coeffs: Iterable[GaussianRational]) -> "LaurentScalar":
        """Canonicalise: trim zero extremal coefficients."""
        cs = list(coeffs)
        lo = 0
        while lo < len(cs) and cs[lo].is_zero():
            lo += 1
        hi = len(cs)
        while hi > lo and cs[hi - 1].is_zero():
            hi -= 1
        if lo == hi:
            return _ZERO_SCALAR
        return LaurentScalar(pmin + lo, tuple(cs[lo:hi]))

    @staticmethod
    def from_dict(d: dict[int, GaussianRational]) -> "LaurentScalar":
        if not d:
            return _ZERO_SCALAR
        lo = min(d)
        hi = max(d)
        return LaurentScalar.make(lo, [d.get(k, GR_ZERO) for k in range(lo, hi + 1)])

    # -- inspection ----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def pmax(self) -> int:
        if not self.coeffs:
            return 0
        return self.pmin + len(self.coeffs) - 1

    def coeff(self, k: int) -> GaussianRational:
        j = k - self.pmin
        if 0 <= j < len(self.coeffs):
            return self.coeffs[j]
        return GR_ZERO

    def items(self) -> Iterable[tuple[int, GaussianRational]]:
        for j, c in enumerate(self.coeffs):
            yield self.pmin + j, c

    def is_constant(self) -> bool:
        return self.is_zero() or (self.pmin == 0 and len(self.coeffs) == 1)

    def constant_value(self) -> GaussianRational:
        if self.is_zero():
            return GR_ZERO
        if not self.is_constant():
            raise ValueError("not a constant Laurent polynomial")
        return self.coeffs[0]

    # -- arithmetic ----------------------------------------------------

    def __add__(self, other: "LaurentScalar") -> "LaurentScalar":
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        lo = min(self.pmin, other.pmin)
        hi = max(self.pmax, other.pmax)
        return LaurentScalar.make(
            lo, [self.coeff(k) + other.coeff(k) for k in range(lo, hi + 1)]
        )

    def __sub__(self, other: "LaurentScalar") -> "LaurentScalar":
        return self + (-other)

    def __neg__(self) -> "LaurentScalar":
        return LaurentScalar(self.pmin, tuple(-c for c in self.coeffs))

    def __mul__(self, other: "LaurentScalar") -> "LaurentScalar":
        if self.is_zero() or other.is_zero():
            return _ZERO_SCALAR
        a, b = self.coeffs, other.coeffs
        out = [GR_ZERO] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca.is_zero():
                continue
            for j, cb in enumerate(b):
                if cb.is_zero():
                    continue
                out[i + j] = out[i + j] + ca * cb
        return LaurentScalar.make(self.pmin + other.pmin, out)

    def scale(self, c: GaussianRational) -> "LaurentScalar":
        if c.is_zero():
            return _ZERO_SCALAR
        return LaurentScalar(self.pmin, tuple(x * c for x in self.coeffs))

    def shift(self, m: int) -> "LaurentScalar":
        """Multiply by t**m."""
        if self.is_zero():
            return self
        return LaurentScalar(self.pmin + m, self.coeffs)

    # -- projectors -----------------------------------------------------

    def project_plus(self) -> "LaurentScalar":
        """Keep powers >= 0."""
        return self._window(0, None)

    def project_minus(self) -> "LaurentScalar":
        """Keep powers <= 0."""
        return self._window(None, 0)

    def project_minus_zero(self) -> "LaurentScalar":
        """Keep powers <= -1."""
        return self._window(None, -1)

    def _window(self, lo: int | None, hi: int | None) -> "LaurentScalar":
        if self.is_zero():
            return self
        a = self.pmin if lo is None else max(self.pmin, lo)
        b = self.pmax if hi is None else min(self.pmax, hi)
        if a > b:
            return _ZERO_SCALAR
        return LaurentScalar.make(a, [self.coeff(k) for k in range(a, b + 1)])

    # -- division --------------------------------------------------------

    def divide_exact(self, den: "LaurentScalar") -> "LaurentScalar":
        """Exact Laurent division; raises NonExactDivisionError if the
        quotient is not a finite Laurent polynomial."""
        if den.is_zero():
            raise ZeroDivisionError("Laurent division by zero")
        if self.is_zero():
            return _ZERO_SCALAR
        q_lo = self.pmin - den.pmin
        q_hi = self.pmax - den.pmax
        if q_hi < q_lo:
            raise NonExactDivisionError("support windows admit no finite quotient")
        rem = {k: c for k, c in self.items()}
        lead = den.coeffs[0]
        quot: dict[int, GaussianRational] = {}
        for k in range(q_lo, q_hi + 1):
            c = rem.get(k + den.pmin, GR_ZERO)
            if c.is_zero():
                continue
            f = c / lead
            quot[k] = f
            for dk, dc in den.items():
                key = k + dk
                rem[key] = rem.get(key, GR_ZERO) - f * dc
        if any(not v.is_zero() for v in rem.values()):
            raise NonExactDivisionError("division left a nonzero remainder")
        return LaurentScalar.from_dict(quot)

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for k, c in self.items():
            if c.is_zero():
                continue
            if k == 0:
                parts.append(f"({c})")
            else:
                parts.append(f"({c})*t^{k}")
        return " + ".join(parts)


_ZERO_SCALAR = LaurentScalar(0, ())


def zero_scalar() -> LaurentScalar:
    return _ZERO_SCALAR


def one_scalar() -> LaurentScalar:
    return LaurentScalar(0, (GR_ONE,))


def monomial(k: int, c: GaussianRational = GR_ONE) -> LaurentScalar:
    if c.is_zero():
        return _ZERO_SCALAR
    return LaurentScalar(k, (c,))


# --------------------------------------------------------------------------
# 2x2 matrices
# --------------------------------------------------------------------------

Entries = tuple[
    tuple[LaurentScalar, LaurentScalar],
    tuple[LaurentScalar, LaurentScalar],
]


@dataclass(frozen=True, slots=True)
class LaurentMatrix2:
    """A 2x2 matrix of Laurent polynomials over Q(i)."""

    entries: Entries

    def __getitem__(self, ij: tuple[int, int]) -> LaurentScalar:
        i, j = ij
        return self.entries[i][j]

    def __add__(self, other: "LaurentMatrix2") -> "LaurentMatrix2":
        return self._zip(other, LaurentScalar.__add__)

    def __sub__(self, other: "LaurentMatrix2") -> "LaurentMatrix2":
        return self._zip(other, LaurentScalar.__sub__)

    def __neg__(self) -> "LaurentMatrix2":
        return self.map(LaurentScalar.__neg__)

    def __mul__(self, other: "LaurentMatrix2") -> "LaurentMatrix2":
        a, b = self.entries, other.entries
        return LaurentMatrix2(
            (
                (a[0][0] * b[0][0] + a[0][1] * b[1][0], a[0][0] * b[0][1] + a[0][1] * b[1][1]),
                (a[1][0] * b[0][0] + a[1][1] * b[1][0], a[1][0] * b[0][1] + a[1][1] * b[1][1]),
            )
        )

    def _zip(self, other: "LaurentMatrix2", op: Callable) -> "LaurentMatrix2":
        return LaurentMatrix2(
            tuple(
                tuple(op(self.entries[i][j], other.entries[i][j]) for j in range(2))
                for i in range(2)
            )
        )

    def map(self, f: Callable[[LaurentScalar], LaurentScalar]) -> "LaurentMatrix2":
        return LaurentMatrix2(
            tuple(tuple(f(self.entries[i][j]) for j in range(2)) for i in range(2))
        )

    def scale(self, c: GaussianRational) -> "LaurentMatrix2":
        return self.map(lambda x: x.scale(c))

    def shift(self, m: int) -> "LaurentMatrix2":
        return self.map(lambda x: x.shift(m))

    def transpose(self) -> "LaurentMatrix2":
        e = self.entries
        return LaurentMatrix2(((e[0][0], e[1][0]), (e[0][1], e[1][1])))

    def project_plus(self) -> "LaurentMatrix2":
        return self.map(LaurentScalar.project_plus)

    def project_minus(self) -> "LaurentMatrix2":
        return self.map(LaurentScalar.project_minus)

    def project_minus_zero(self) -> "LaurentMatrix2":
        return self.map(LaurentScalar.project_minus_zero)

    def is_zero(self) -> bool:
        return all(self.entries[i][j].is_zero() for i in range(2) for j in range(2))

    def support(self) -> tuple[int, int]:
        """(lowest, highest) power over all entries; (0, 0) for the zero matrix."""
        los = [e.pmin for row in self.entries for e in row if not e.is_zero()]
        his = [e.pmax for row in self.entries for e in row if not e.is_zero()]
        if not los:
            return (0, 0)
        return (min(los), max(his))

    def coeff_matrix(self, k: int) -> tuple[tuple[GaussianRational, ...], ...]:
        return tuple(tuple(self.entries[i][j].coeff(k) for j in range(2)) for i in range(2))

    def column(self, j: int) -> tuple[LaurentScalar, LaurentScalar]:
        return (self.entries[0][j], self.entries[1][j])


def identity2() -> LaurentMatrix2:
    one = one_scalar()
    zero = zero_scalar()
    return LaurentMatrix2(((one, zero), (zero, one)))


def constant_matrix(rows: Sequence[Sequence[GaussianRational]]) -> LaurentMatrix2:
    return LaurentMatrix2(
        tuple(tuple(monomial(0, rows[i][j]) for j in range(2)) for i in range(2))
    )


def matrix_from_entries(
    e11: LaurentScalar, e12: LaurentScalar, e21: LaurentScalar, e22: LaurentScalar
) -> LaurentMatrix2:
    return LaurentMatrix2(((e11, e12), (e21, e22)))


def det2(x: LaurentMatrix2) -> LaurentScalar:
    e = x.entries
    return e[0][0] * e[1][1] - e[0][1] * e[1][0]


def monomial_winding(d: LaurentScalar) -> tuple[int, GaussianRational]:
    """For d = c*t**theta return (theta, c); otherwise raise."""
    if d.is_zero() or len(d.coeffs) != 1:
        raise NotMonomialDetError(f"determinant is not a monomial: {d}")
    return d.pmin, d.coeffs[0]


def invert_unimodular(x: LaurentMatrix2) -> LaurentMatrix2:
    """Inverse via the adjugate; requires a nonzero constant determinant."""
    d = det2(x)
    if not d.is_constant() or d.is_zero():
        raise NonConstantDeterminantError(
            "matrix is not unimodular; use a factorisation instead"
        )
    inv_det = GR_ONE / d.constant_value()
    e = x.entries
    return LaurentMatrix2(
        (
            (e[1][1].scale(inv_det), (-e[0][1]).scale(inv_det)),
            ((-e[1][0]).scale(inv_det), e[0][0].scale(inv_det)),
        )
    )


def value_at_infinity(x: LaurentMatrix2) -> tuple[tuple[GaussianRational, ...], ...]:
    """t**0 coefficient of a minus-type matrix (all entry powers <= 0)."""
    _, hi = x.support()
    if hi > 0:
        raise ValueError("value_at_infinity requires a minus-type matrix")
    return x.coeff_matrix(0)


def conjugate_by_dr(x: LaurentMatrix2, indices: tuple[int, int]) -> LaurentMatrix2:
    """D^-1 X D with D = diag(t**rho1, t**rho2): entry (i,j) shifts by rho_j - rho_i."""
    r1, r2 = indices
    e = x.entries
    return LaurentMatrix2(
        (
            (e[0][0], e[0][1].shift(r2 - r1)),
            (e[1][0].shift(r1 - r2), e[1][1]),
        )
    )


# --------------------------------------------------------------------------
# Wiener norm bounds
# --------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class NormBound:
    """Certified upper bound of a Wiener norm."""

    bound: UpperBound


def scalar_norm_upper(x: LaurentScalar, tol: Fraction = DEFAULT_TOL) -> NormBound:
    """Upper bound of sum_k |c_k|; exact when each modulus is rational."""
    if x.is_zero():
        return NormBound(ub_exact(0))
    per = as_fraction(tol) / len(x.coeffs)
    return NormBound(ub_add(*(abs_upper(c, per) for c in x.coeffs)))


def wiener_norm_upper(x: LaurentMatrix2, tol: Fraction = DEFAULT_TOL) -> NormBound:
    """Certified upper bound of ||X||_W = sum_k ||X_k||_1 with the maximum
    column sum matrix norm; exact whenever every entry modulus is rational."""
    lo, hi = x.support()
    if x.is_zero():
        return NormBound(ub_exact(0))
    n_terms = max(1, 4 * (hi - lo + 1))
    per = as_fraction(tol) / n_terms
    total = ub_exact(0)
    for k in range(lo, hi + 1):
        cols = []
        for j in range(2):
            cols.append(
                ub_add(
                    abs_upper(x.entries[0][j].coeff(k), per),
                    abs_upper(x.entries[1][j].coeff(k), per),
                )
            )
        term = ub_max(cols[0], cols[1])
        if term.value:
            total = ub_add(total, term)
    return NormBound(total)


# --------------------------------------------------------------------------
# LMP-JSON wire format
# --------------------------------------------------------------------------


def _scalar_to_json(x: LaurentScalar) -> dict:
    return {"pmin": x.pmin if x.coeffs else 0, "coeffs": [gr_to_json(c) for c in x.coeffs]}


def _scalar_from_json(obj: dict) -> LaurentScalar:
    return LaurentScalar.make(int(obj["pmin"]), [gr_from_json(c) for c in obj["coeffs"]])


def lmp_to_json(x: LaurentMatrix2) -> dict:
    return {
        "rows": 2,
        "cols": 2,
        "entries": [[_scalar_to_json(x.entries[i][j]) for j in range(2)] for i in range(2)],
    }


def lmp_from_json(obj: dict) -> LaurentMatrix2:
    if obj.get("rows") != 2 or obj.get("cols") != 2:
        raise ValueError("LMP-JSON must describe a 2x2 matrix")
    ent = obj["entries"]
    return LaurentMatrix2(
        tuple(tuple(_scalar_from_json(ent[i][j]) for j in range(2)) for i in range(2))
    )


def lmp_dumps(x: LaurentMatrix2) -> str:
    return json.dumps(lmp_to_json(x), indent=2)


def lmp_loads(s: str) -> LaurentMatrix2:
    return lmp_from_json(json.loads(s))


def scalar_to_json(x: LaurentScalar) -> dict:
    return _scalar_to_json(x)


def scalar_from_json(obj: dict) -> LaurentScalar:
    return _scalar_from_json(obj)
