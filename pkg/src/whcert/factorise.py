"""Exact right Wiener-Hopf factorisation of 2x2 Laurent matrix polynomials
with monomial determinant, over Q(i).

The factorisation a = a_minus * diag(t**rho1, t**rho2) * a_plus is recovered
from minimal solutions of banded Toeplitz kernel problems: a polynomial
2-vector phi lies in the level-k kernel slice when every coefficient of
a*phi above t**k vanishes.  Columns of a_plus**-1 are exactly such vectors at
levels rho1 and rho2, so scanning levels and taking degree-minimal kernel
vectors reconstructs the factor pair.

Soundness does not rest on the search heuristics: every candidate is
post-verified exactly (product identity, support windows, constant
determinants, index sum), and a candidate that fails verification restarts
the search with a larger degree budget.  Unverified factors are never
returned.

The elimination core clears denominators and works on Gaussian-integer
pairs with row-content stripping, which keeps intermediate growth near the
minor bound without per-operation gcd normalisation of rationals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import NonConstantDeterminantError, VerificationFailedError
from .exactmath import GR_ONE, GR_ZERO, GaussianRational
from .laurent import (
    LaurentMatrix2,
    LaurentScalar,
    det2,
    identity2,
    invert_unimodular,
    matrix_from_entries,
    monomial,
    monomial_winding,
    zero_scalar,
)

__all__ = [
    "KernelSlice",
    "Factorisation",
    "VerificationReport",
    "kernel_slice",
    "right_factorise",
    "verify_factorisation",
    "index_dimension_profile",
    "diagonal_dr",
    "is_stable",
]

VecPoly = tuple[LaurentScalar, LaurentScalar]


@dataclass(frozen=True, slots=True)
class KernelSlice:
    """Canonical basis of {phi : deg phi <= degree_cap, (a*phi)_m = 0 for
    level < m <= pmax + degree_cap}, ordered by ascending vector degree."""

    level: int
    degree_cap: int
    basis: tuple[VecPoly, ...]

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def dimension_within(self, degree: int) -> int:
        """Dimension of the sub-slice of vectors with degree <= `degree`."""
        return sum(1 for v in self.basis if _vec_degree(v) <= degree)


@dataclass(frozen=True, slots=True)
class Factorisation:
    """a == a_minus * diag(t**rho1, t**rho2) * a_plus, exactly."""

    a_minus: LaurentMatrix2
    indices: tuple[int, int]
    a_plus: LaurentMatrix2
    normalisation: str = "raw"

    @property
    def stable(self) -> bool:
        return is_stable(self.indices)

    def dr(self) -> LaurentMatrix2:
        return diagonal_dr(self.indices)

    def product(self) -> LaurentMatrix2:
        return self.a_minus * self.dr() * self.a_plus


@dataclass(frozen=True, slots=True)
class VerificationReport:
    product_ok: bool
    support_ok: bool
    determinant_ok: bool
    index_sum_ok: bool

    @property
    def all_ok(self) -> bool:
        return self.product_ok and self.support_ok and self.determinant_ok and self.index_sum_ok


def is_stable(indices: tuple[int, int]) -> bool:
    """Gohberg-Krein-Bojarskii stability: the index gap is at most one."""
    return indices[1] - indices[0] <= 1


def diagonal_dr(indices: tuple[int, int]) -> LaurentMatrix2:
    return matrix_from_entries(
        monomial(indices[0]), zero_scalar(), zero_scalar(), monomial(indices[1])
    )


def _vec_degree(v: VecPoly) -> int:
    return max(v[0].pmax if not v[0].is_zero() else -1, v[1].pmax if not v[1].is_zero() else -1)


# --------------------------------------------------------------------------
# Exact nullspace over Q(i): Gaussian-integer forward echelon, rational
# back-substitution.  Columns are ordered by ascending coefficient degree so
# the basis vector attached to the first free column is degree-minimal.
# --------------------------------------------------------------------------

_Gi = tuple[int, int]


def _cmul(x: _Gi, y: _Gi) -> _Gi:
    a, b = x
    c, d = y
    if b == 0:
        if d == 0:
            return (a * c, 0)
        return (a * c, a * d)
    if d == 0:
        return (a * c, b * c)
    return (a * c - b * d, a * d + b * c)


def _cdiv(x: _Gi, y: _Gi) -> _Gi:
    """Exact division in Z[i]; callers guarantee exactness (Bareiss)."""
    a, b = x
    c, d = y
    if d == 0:
        if c == 1:
            return x
        if c == -1:
            return (-a, -b)
        qa, ra = divmod(a, c)
        qb, rb = divmod(b, c)
        if ra or rb:
            raise ArithmeticError("inexact Gaussian-integer division")
        return (qa, qb)
    n = c * c + d * d
    qa, ra = divmod(a * c + b * d, n)
    qb, rb = divmod(b * c - a * d, n)
    if ra or rb:
        raise ArithmeticError("inexact Gaussian-integer division")
    return (qa, qb)


def _clear_denominators(row: list[GaussianRational]) -> list[_Gi]:
    lcm = 1
    for c in row:
        lcm = lcm * c.re.denominator // math.gcd(lcm, c.re.denominator)
        lcm = lcm * c.im.denominator // math.gcd(lcm, c.im.denominator)
    return [
        (int(c.re.numerator * (lcm // c.re.denominator)), int(c.im.numerator * (lcm // c.im.denominator)))
        for c in row
    ]


def _row_bits(row: list[_Gi], start: int) -> int:
    m = 0
    for a, b in row[start:]:
        if a:
            m = max(m, a.bit_length() if a > 0 else (-a).bit_length())
        if b:
            m = max(m, b.bit_length() if b > 0 else (-b).bit_length())
    return m


_ONE_GI: _Gi = (1, 0)


def _row_content(row: list[_Gi], start: int) -> int:
    g = 0
    for a, b in row[start:]:
        if a:
            g = math.gcd(g, a)
        if b:
            g = math.gcd(g, b)
        if g == 1:
            return 1
    return g


def _try_row_div(row: list[_Gi], start: int, d: _Gi) -> bool:
    """Divide row[start:] by the Gaussian integer d in place when every
    entry divides exactly; leave the row untouched otherwise."""
    c, e = d
    if e == 0 and c in (1, -1):
        if c == -1:
            for j in range(start, len(row)):
                a, b = row[j]
                row[j] = (-a, -b)
        return True
    n = c * c + e * e
    out = []
    for a, b in row[start:]:
        if a == 0 and b == 0:
            out.append((0, 0))
            continue
        qa, ra = divmod(a * c + b * e, n)
        qb, rb = divmod(b * c - a * e, n)
        if ra or rb:
            return False
        out.append((qa, qb))
    row[start:] = out
    return True


class _GrowthBail(Exception):
    pass


def _pivot_index(work: list[list[_Gi]], col: int, ncols: int, cand: list[int]) -> int:
    def size_key(i: int) -> tuple[int, int, int]:
        r = work[i]
        last = ncols - 1
        while last > col and r[last] == (0, 0):
            last -= 1
        return (last - col, _row_bits(r, col), i)

    return min(cand, key=size_key)


def _eliminate_stripped(
    work: list[list[_Gi]], ncols: int, bit_cap: int
) -> list[tuple[int, list[_Gi]]]:
    """Division-free elimination with integer content removal.  Very fast on
    the banded systems truncated streams produce (rows share huge scales);
    raises _GrowthBail if entries outgrow `bit_cap` (unstructured input)."""
    echelon: list[tuple[int, list[_Gi]]] = []
    for col in range(ncols):
        cand = [i for i in range(len(work)) if work[i][col] != (0, 0)]
        if not cand:
            continue
        pi = _pivot_index(work, col, ncols, cand)
        piv = work[pi]
        pv = piv[col]
        for i in cand:
            if i == pi:
                continue
            r = work[i]
            rv = r[col]
            nrv = (-rv[0], -rv[1])
            for j in range(col, ncols):
                pj = piv[j]
                rj = r[j]
                if pj == (0, 0):
                    if rj != (0, 0):
                        r[j] = _cmul(pv, rj)
                elif rj == (0, 0):
                    r[j] = _cmul(nrv, pj)
                else:
                    r[j] = _cadd(_cmul(pv, rj), _cmul(nrv, pj))
            g = _row_content(r, col + 1)
            if g > 1:
                for j in range(col + 1, ncols):
                    a, b = r[j]
                    r[j] = (a // g, b // g)
            if _row_bits(r, col + 1) > bit_cap:
                raise _GrowthBail
        echelon.append((col, piv))
        work[:] = [work[i] for i in range(len(work)) if i != pi and any(a or b for a, b in work[i])]
    return echelon


def _eliminate_bareiss(work: list[list[_Gi]], ncols: int) -> list[tuple[int, list[_Gi]]]:
    """Fraction-free Bareiss elimination: entries stay minor-sized and every
    division is exact.  Rows skipped by a pivot step only accumulate the
    scalar P[s]/P[t] (pivot products telescope), so they carry a stage tag
    and are rescaled lazily."""
    tags = [0] * len(work)
    pivots: list[_Gi] = [_ONE_GI]
    echelon: list[tuple[int, list[_Gi]]] = []

    def materialise(i: int) -> None:
        stage = len(pivots) - 1
        t = tags[i]
        if t == stage:
            return
        num, den = pivots[stage], pivots[t]
        row = work[i]
        for j, v in enumerate(row):
            if v != (0, 0):
                row[j] = _cdiv(_cmul(v, num), den)
        tags[i] = stage

    for col in range(ncols):
        cand = [i for i in range(len(work)) if work[i][col] != (0, 0)]
        if not cand:
            continue
        pi = _pivot_index(work, col, ncols, cand)
        materialise(pi)
        piv = work[pi]
        pv = piv[col]
        prev = pivots[-1]
        for i in cand:
            if i == pi:
                continue
            materialise(i)
            r = work[i]
            rv = r[col]
            nrv = (-rv[0], -rv[1])
            for j in range(col, ncols):
                pj = piv[j]
                rj = r[j]
                if pj == (0, 0):
                    if rj != (0, 0):
                        r[j] = _cdiv(_cmul(pv, rj), prev)
                elif rj == (0, 0):
                    r[j] = _cdiv(_cmul(nrv, pj), prev)
                else:
                    r[j] = _cdiv(_cadd(_cmul(pv, rj), _cmul(nrv, pj)), prev)
            tags[i] += 1
        pivots.append(pv)
        echelon.append((col, piv))
        keep = [i for i in range(len(work)) if i != pi and any(a or b for a, b in work[i])]
        work[:] = [work[i] for i in keep]
        tags[:] = [tags[i] for i in keep]
    return echelon


def nullspace(rows: list[list[GaussianRational]], ncols: int) -> list[list[GaussianRational]]:
    """Canonical kernel basis of the homogeneous system, one vector per free
    column in ascending column order; the free coordinate of each vector is 1
    and all other free coordinates are 0.

    The elimination strategy adapts to the input: rows with large cleared
    integers (truncated analytic streams) go through content-stripped
    division-free elimination, everything else through fraction-free Bareiss;
    a growth bailout reroutes pathological inputs to Bareiss.  Pivot columns
    are a rank profile, so the resulting basis is identical either way.
    """
    cleared: list[list[_Gi]] = []
    for r in rows:
        ir = _clear_denominators(r)
        if any(a or b for a, b in ir):
            cleared.append(ir)

    b0 = max((_row_bits(r, 0) for r in cleared), default=0)
    echelon: list[tuple[int, list[_Gi]]] | None = None
    if b0 >= 96:
        work = [list(r) for r in cleared]
        bit_cap = 16 * (b0 + 16) + 64 * ncols
        try:
            echelon = _eliminate_stripped(work, ncols, bit_cap)
        except _GrowthBail:
            echelon = None
    if echelon is None:
        work = [list(r) for r in cleared]
        echelon = _eliminate_bareiss(work, ncols)

    pivot_cols = {c for c, _ in echelon}
    ech_gr = [
        (c, [GaussianRational(Fraction(a), Fraction(b)) for a, b in row]) for c, row in echelon
    ]

    basis: list[list[GaussianRational]] = []
    for f in range(ncols):
        if f in pivot_cols:
            continue
        x = [GR_ZERO] * ncols
        x[f] = GR_ONE
        for pc, row in reversed(ech_gr):
            if pc > f:
                continue
            s = GR_ZERO
            for c in range(pc + 1, f + 1):
                if not x[c].is_zero() and not row[c].is_zero():
                    s = s + row[c] * x[c]
            x[pc] = -(s / row[pc]) if not s.is_zero() else GR_ZERO
        basis.append(x)
    return basis


def _cadd(x: _Gi, y: _Gi) -> _Gi:
    return (x[0] + y[0], x[1] + y[1])


# --------------------------------------------------------------------------
# Kernel slices
# --------------------------------------------------------------------------


def _vec_from_coords(x: list[GaussianRational], degree_cap: int) -> VecPoly:
    comp0 = [x[2 * j] for j in range(degree_cap + 1)]
    comp1 = [x[2 * j + 1] for j in range(degree_cap + 1)]
    return (LaurentScalar.make(0, comp0), LaurentScalar.make(0, comp1))


def _coords_from_vec(v: VecPoly, degree_cap: int) -> list[GaussianRational]:
    x = [GR_ZERO] * (2 * (degree_cap + 1))
    for comp in range(2):
        for k, c in v[comp].items():
            if k < 0 or k > degree_cap:
                raise ValueError("vector exceeds the coordinate window")
            x[2 * k + comp] = c
    return x


def kernel_slice(a: LaurentMatrix2, level: int, degree_cap: int) -> KernelSlice:
    """Exact banded homogeneous solve for the level-`level` slice with
    polynomial degree at most `degree_cap`."""
    if degree_cap < 0:
        raise ValueError("degree_cap must be nonnegative")
    lo, hi = a.support()
    ncols = 2 * (degree_cap + 1)
    rows: list[list[GaussianRational]] = []
    for m in range(level + 1, hi + degree_cap + 1):
        for out in range(2):
            row = [GR_ZERO] * ncols
            nonzero = False
            for j in range(degree_cap + 1):
                for comp in range(2):
                    c = a.entries[out][comp].coeff(m - j)
                    if not c.is_zero():
                        row[2 * j + comp] = c
                        nonzero = True
            if nonzero:
                rows.append(row)
    basis = [
        _vec_from_coords(x, degree_cap) for x in nullspace(rows, ncols)
    ]
    return KernelSlice(level, degree_cap, tuple(basis))


def _stable_slice(a: LaurentMatrix2, level: int, d0: int, cap: int) -> KernelSlice:
    """Grow the degree cap until the slice dimension is stable for two
    consecutive caps (one elimination yields the dimensions of every smaller
    cap, so stability is read off the basis degrees)."""
    d = max(d0, 1)
    while True:
        sl = kernel_slice(a, level, d)
        if sl.dimension_within(d) == sl.dimension_within(d - 1):
            return sl
        if d >= cap:
            return sl
        d = min(2 * d, cap)


# --------------------------------------------------------------------------
# Small rational row reduction (used to canonicalise the second column)
# --------------------------------------------------------------------------


def _rref(rows: list[list[GaussianRational]], ncols: int) -> list[tuple[int, list[GaussianRational]]]:
    out: list[tuple[int, list[GaussianRational]]] = []
    work = [list(r) for r in rows]
    for col in range(ncols):
        piv = None
        for r in work:
            if not r[col].is_zero():
                piv = r
                break
        if piv is None:
            continue
        work.remove(piv)
        inv = GR_ONE / piv[col]
        piv = [c * inv for c in piv]
        for r in work:
            if not r[col].is_zero():
                f = r[col]
                for j in range(col, ncols):
                    r[j] = r[j] - f * piv[j]
        for _, prow in out:
            if not prow[col].is_zero():
                f = prow[col]
                for j in range(col, ncols):
                    prow[j] = prow[j] - f * piv[j]
        out.append((col, piv))
        work = [r for r in work if any(not c.is_zero() for c in r)]
    return out


def _reduce_against(row: list[GaussianRational], pivots: list[tuple[int, list[GaussianRational]]]) -> list[GaussianRational]:
    r = list(row)
    for pc, prow in pivots:
        if not r[pc].is_zero():
            f = r[pc]
            for j in range(pc, len(r)):
                r[j] = r[j] - f * prow[j]
    return r


# --------------------------------------------------------------------------
# Factorisation
# --------------------------------------------------------------------------


class _AttemptFailed(Exception):
    pass


def _pick_second_column(
    sl: KernelSlice, phi1: VecPoly, gap: int
) -> VecPoly | None:
    """Degree-minimal slice vector independent of polynomial multiples of
    phi1 up to t**gap, reduced modulo those multiples."""
    cap = sl.degree_cap
    ncols = 2 * (cap + 1)
    if _vec_degree(phi1) + gap > cap:
        return None
    s_rows = [
        _coords_from_vec((phi1[0].shift(s), phi1[1].shift(s)), cap) for s in range(gap + 1)
    ]
    s_pivots = _rref(s_rows, ncols)
    reduced = []
    for v in sl.basis:
        r = _reduce_against(_coords_from_vec(v, cap), s_pivots)
        if any(not c.is_zero() for c in r):
            reduced.append(r)
    if not reduced:
        return None
    candidates = [row for _, row in _rref(reduced, ncols)]
    best = min(
        candidates,
        key=lambda row: (
            max((j // 2 for j, c in enumerate(row) if not c.is_zero()), default=-1),
            min((j for j, c in enumerate(row) if not c.is_zero()), default=ncols),
        ),
    )
    return _vec_from_coords(best, cap)


def _attempt(a: LaurentMatrix2, theta: int, d0: int, cap: int) -> Factorisation:
    k0 = theta // 2  # rho1 <= floor(theta/2) always, since rho1 <= rho2
    sl = _stable_slice(a, k0, d0, cap)
    if sl.dimension == 0:
        raise _AttemptFailed("empty slice at the midpoint level")

    # walk down by restricting the current basis: each step imposes the two
    # scalar conditions "coefficient of t**k of a*phi vanishes"
    level = k0
    basis = [list(_coords_from_vec(v, sl.degree_cap)) for v in sl.basis]
    vecs = list(sl.basis)
    while True:
        rows = []
        for v in vecs:
            av = _apply(a, v)
            rows.append([av[0].coeff(level), av[1].coeff(level)])
        combo_cols = 2
        combo_rows: list[list[GaussianRational]] = [
            [rows[i][c] for i in range(len(vecs))] for c in range(combo_cols)
        ]
        combos = nullspace(combo_rows, len(vecs))
        if not combos:
            break
        new_basis = []
        for combo in combos:
            acc = [GR_ZERO] * len(basis[0])
            for coef, bvec in zip(combo, basis):
                if coef.is_zero():
                    continue
                for j, bc in enumerate(bvec):
                    if not bc.is_zero():
                        acc[j] = acc[j] + coef * bc
            new_basis.append(acc)
        canon = [row for _, row in _rref(new_basis, len(basis[0]))]
        if not canon:
            break
        level -= 1
        basis = canon
        vecs = [_vec_from_coords(x, sl.degree_cap) for x in basis]
    rho1 = level
    vecs.sort(key=_vec_degree)
    phi1 = vecs[0]

    rho2 = theta - rho1
    if rho2 < rho1:
        raise _AttemptFailed("index midpoint probe overshot")

    if rho2 == rho1:
        sl2 = KernelSlice(rho1, sl.degree_cap, tuple(vecs))
    else:
        need = max(d0, _vec_degree(phi1) + (rho2 - rho1) + 1)
        sl2 = _stable_slice(a, rho2, need, cap)
    phi2 = _pick_second_column(sl2, phi1, rho2 - rho1)
    if phi2 is None:
        raise _AttemptFailed("no independent column at the companion level")

    big_phi = matrix_from_entries(phi1[0], phi2[0], phi1[1], phi2[1])
    try:
        a_plus = invert_unimodular(big_phi)
    except NonConstantDeterminantError as exc:
        raise _AttemptFailed(str(exc))
    prod = a * big_phi
    a_minus = matrix_from_entries(
        prod.entries[0][0].shift(-rho1),
        prod.entries[0][1].shift(-rho2),
        prod.entries[1][0].shift(-rho1),
        prod.entries[1][1].shift(-rho2),
    )
    result = Factorisation(a_minus, (rho1, rho2), a_plus, "raw")
    if not verify_factorisation(a, result).all_ok:
        raise _AttemptFailed("exact post-verification failed")
    return result


def _apply(a: LaurentMatrix2, v: VecPoly) -> VecPoly:
    e = a.entries
    return (e[0][0] * v[0] + e[0][1] * v[1], e[1][0] * v[0] + e[1][1] * v[1])


def right_factorise(a: LaurentMatrix2, degree_hint: int | None = None) -> Factorisation:
    """Exact right factorisation with raw (un-normalised) factors and
    indices sorted rho1 <= rho2.  Raises NotMonomialDetError for inputs whose
    determinant is not a monomial and VerificationFailedError if no verified
    factorisation is found within the degree budget."""
    theta, _ = monomial_winding(det2(a))
    lo, hi = a.support()
    cap = 8 * (hi - lo + abs(theta) + 1)
    d = degree_hint if degree_hint is not None else max(hi, -lo, 1) + 2
    d = max(1, min(d, cap))
    while True:
        try:
            return _attempt(a, theta, d, cap)
        except _AttemptFailed as exc:
            if d >= cap:
                raise VerificationFailedError(
                    f"no verified factorisation within degree cap {cap}: {exc}"
                )
            d = min(2 * d, cap)


def verify_factorisation(a: LaurentMatrix2, r: Factorisation) -> VerificationReport:
    """The four exact checks every emitted factorisation must pass."""
    rho1, rho2 = r.indices
    product_ok = (r.product() - a).is_zero()

    _, minus_hi = r.a_minus.support()
    plus_lo, _ = r.a_plus.support()
    support_ok = minus_hi <= 0 and plus_lo >= 0 and not r.a_minus.is_zero() and not r.a_plus.is_zero()

    dm = det2(r.a_minus)
    dp = det2(r.a_plus)
    determinant_ok = (
        dm.is_constant() and not dm.is_zero() and dp.is_constant() and not dp.is_zero()
    )

    try:
        theta, _ = monomial_winding(det2(a))
        index_sum_ok = rho1 + rho2 == theta
    except Exception:
        index_sum_ok = False
    return VerificationReport(product_ok, support_ok, determinant_ok, index_sum_ok)


def index_dimension_profile(
    a: LaurentMatrix2, k_from: int, k_to: int, degree_hint: int | None = None
) -> dict[int, int]:
    """Slice dimensions d_k for k in [k_from, k_to]; for a verified
    factorisation with indices (rho1, rho2) these must equal
    sum_i max(0, k - rho_i + 1)."""
    lo, hi = a.support()
    cap = 8 * (hi - lo + 2)
    out: dict[int, int] = {}
    for k in range(k_from, k_to + 1):
        d0 = degree_hint if degree_hint is not None else (hi - lo) + abs(k) + 2
        sl = _stable_slice(a, k, d0, max(cap, d0))
        out[k] = sl.dimension
    return out
