"""Exact arithmetic over the Gaussian rationals Q(i), plus certified rational
upper bounds for the irrational constants (square roots, exponentials, complex
moduli) that enter norm and error formulas.

Everything here is one-sided on purpose: an `UpperBound` promises
``value >= true_quantity`` with a guaranteed gap ``value - true <= tolerance``.
Sums and products of upper bounds of nonnegative quantities are again upper
bounds, which is all the certification pipeline needs.  No lower-bound
interval machinery is provided (or wanted); where a lower bound is genuinely
required (reciprocals, ``1 - q`` terms) dedicated helpers produce it from
exact rational data.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass
from decimal import Decimal, InvalidOperation
from fractions import Fraction
from typing import Union

# exact rationals routinely exceed the interpreter's default int<->str limit
# (fraction pickling and decimal formatting both go through str)
if hasattr(sys, "set_int_max_str_digits"):
    if 0 < sys.get_int_max_str_digits() < 2_000_000:
        sys.set_int_max_str_digits(2_000_000)

__all__ = [
    "GaussianRational",
    "UpperBound",
    "DEFAULT_TOL",
    "GR_ZERO",
    "GR_ONE",
    "GR_I",
    "as_fraction",
    "fraction_str",
    "parse_decimal",
    "sci_str",
    "round_sig",
    "gr_from_json",
    "gr_to_json",
    "sqrt_upper",
    "sqrt_lower",
    "exp_upper",
    "abs_upper",
    "ub_exact",
    "ub_add",
    "ub_mul",
    "ub_scale",
    "ub_max",
    "ub_pow",
    "ub_recip_one_minus",
    "ub_compress",
]

RationalLike = Union[Fraction, int, str]

#: default absolute tolerance for certified constants; tight enough that the
#: 10-digit reference tables survive propagation through the bound formulas
DEFAULT_TOL = Fraction(1, 10**15)


def as_fraction(x: RationalLike) -> Fraction:
    """Coerce ints, Fractions and `p/q` strings to Fraction.  Floats are
    rejected: exactness at the boundary is part of the contract."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        s = x.strip()
        if "/" in s:
            num, den = s.split("/", 1)
            return Fraction(int(num), int(den))
        return Fraction(int(s))
    raise TypeError(f"expected an exact rational, got {type(x).__name__}: {x!r}")


def fraction_str(x: Fraction) -> str:
    """Text encoding `[-]num/den`, denominator omitted when 1."""
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_decimal(s: str) -> Fraction:
    """Exact Fraction from a decimal string such as '3.252250175e-1'."""
    try:
        return Fraction(Decimal(s))
    except InvalidOperation as exc:
        raise ValueError(f"not a decimal literal: {s!r}") from exc


# --------------------------------------------------------------------------
# Gaussian rationals
# --------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class GaussianRational:
    """An exact element of Q(i).  Immutable; all operations are pure."""

    re: Fraction
    im: Fraction

    @staticmethod
    def of(re: RationalLike, im: RationalLike = 0) -> "GaussianRational":
        return GaussianRational(as_fraction(re), as_fraction(im))

    def __add__(self, other: "GaussianRational") -> "GaussianRational":
        return GaussianRational(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "GaussianRational") -> "GaussianRational":
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __neg__(self) -> "GaussianRational":
        return GaussianRational(-self.re, -self.im)

    def __mul__(self, other: "GaussianRational") -> "GaussianRational":
        a, b, c, d = self.re, self.im, other.re, other.im
        return GaussianRational(a * c - b * d, a * d + b * c)

    def __truediv__(self, other: "GaussianRational") -> "GaussianRational":
        n = other.abs_squared()
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(i)")
        a, b, c, d = self.re, self.im, other.re, other.im
        return GaussianRational((a * c + b * d) / n, (b * c - a * d) / n)

    def conj(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def abs_squared(self) -> Fraction:
        """|z|^2 = re^2 + im^2, an exact nonnegative rational."""
        return self.re * self.re + self.im * self.im

    def is_zero(self) -> bool:
        return not self.re and not self.im

    def scale(self, c: Fraction) -> "GaussianRational":
        return GaussianRational(self.re * c, self.im * c)

    def inverse(self) -> "GaussianRational":
        return GR_ONE / self

    def __str__(self) -> str:
        if not self.im:
            return fraction_str(self.re)
        if not self.re:
            return f"{fraction_str(self.im)}i"
        sign = "+" if self.im > 0 else "-"
        return f"{fraction_str(self.re)}{sign}{fraction_str(abs(self.im))}i"


GR_ZERO = GaussianRational(Fraction(0), Fraction(0))
GR_ONE = GaussianRational(Fraction(1), Fraction(0))
GR_I = GaussianRational(Fraction(0), Fraction(1))


def gr_to_json(z: GaussianRational) -> dict:
    return {"re": fraction_str(z.re), "im": fraction_str(z.im)}


def gr_from_json(obj: dict) -> GaussianRational:
    return GaussianRational(as_fraction(obj["re"]), as_fraction(obj["im"]))


# --------------------------------------------------------------------------
# Certified upper bounds
# --------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class UpperBound:
    """A rational value guaranteed to dominate some real quantity.

    Invariants: ``value >= true`` and ``value - true <= tolerance >= 0``.
    `kind` records the primitive that produced the bound.
    """

    value: Fraction
    tolerance: Fraction
    kind: str = "composite"

    def __post_init__(self) -> None:
        if self.tolerance < 0:
            raise ValueError("tolerance must be nonnegative")


def ub_exact(x: RationalLike, kind: str = "composite") -> UpperBound:
    """Wrap an exactly known rational quantity."""
    v = as_fraction(x)
    return UpperBound(v, Fraction(0), kind)


def _coerce(u: Union[UpperBound, RationalLike]) -> UpperBound:
    return u if isinstance(u, UpperBound) else ub_exact(u)


def ub_add(*parts: Union[UpperBound, RationalLike]) -> UpperBound:
    v = Fraction(0)
    t = Fraction(0)
    for p in parts:
        p = _coerce(p)
        v += p.value
        t += p.tolerance
    return UpperBound(v, t)


def ub_mul(a: Union[UpperBound, RationalLike], b: Union[UpperBound, RationalLike]) -> UpperBound:
    """Product bound; valid for bounds of *nonnegative* quantities."""
    a, b = _coerce(a), _coerce(b)
    if a.value < 0 or b.value < 0:
        raise ValueError("ub_mul requires nonnegative bounds")
    return UpperBound(a.value * b.value, a.value * b.tolerance + b.value * a.tolerance)


def ub_scale(u: Union[UpperBound, RationalLike], c: RationalLike) -> UpperBound:
    """Scale by an exact nonnegative rational."""
    u = _coerce(u)
    c = as_fraction(c)
    if c < 0:
        raise ValueError("ub_scale requires a nonnegative factor")
    return UpperBound(u.value * c, u.tolerance * c)


def ub_max(a: UpperBound, b: UpperBound) -> UpperBound:
    return UpperBound(max(a.value, b.value), max(a.tolerance, b.tolerance))


def ub_pow(u: Union[UpperBound, RationalLike], n: int) -> UpperBound:
    if n < 0:
        raise ValueError("ub_pow requires n >= 0")
    out = ub_exact(1)
    base = _coerce(u)
    for _ in range(n):
        out = ub_mul(out, base)
    return out


def ub_recip_one_minus(q: UpperBound) -> UpperBound:
    """Upper bound of 1/(1-s) given a certified upper bound q of s in [0,1).

    Requires q.value < 1; this is exactly the check the criterion performs
    before any 1/(1-q_N) expression is formed.
    """
    if q.value >= 1:
        raise ValueError("ub_recip_one_minus requires a certified q < 1")
    v = 1 / (1 - q.value)
    tol = q.tolerance * v * v
    return UpperBound(v, tol)


def ub_compress(u: UpperBound, bits: int = 128) -> UpperBound:
    """Round the value up to `bits` significant dyadic digits to stop
    denominator growth.  Loosens the bound relatively by at most 2**-bits;
    never invalidates it."""
    v = u.value
    if v == 0:
        return u
    if v < 0:
        raise ValueError("ub_compress expects a nonnegative bound")
    mag = v.numerator.bit_length() - v.denominator.bit_length()
    shift = bits - mag
    if shift <= 0:
        scale = 1 << (-shift)
        out = Fraction(-((-v.numerator) // (v.denominator * scale)) * scale)
    else:
        scale = 1 << shift
        out = Fraction(-((-v.numerator * scale) // v.denominator), scale)
    return UpperBound(out, u.tolerance + (out - v), u.kind)


# --------------------------------------------------------------------------
# Certified primitives: sqrt, exp, abs
# --------------------------------------------------------------------------


def sqrt_upper(q: RationalLike, tol: RationalLike = DEFAULT_TOL) -> UpperBound:
    """Rational u with u >= sqrt(q) and u - sqrt(q) <= tol; exact for perfect
    rational squares.  Monotone: shrinking tol never increases u."""
    q = as_fraction(q)
    tol = as_fraction(tol)
    if q < 0:
        raise ValueError("sqrt_upper requires q >= 0")
    if tol <= 0:
        raise ValueError("sqrt_upper requires tol > 0")
    if q == 0:
        return UpperBound(Fraction(0), Fraction(0), "sqrt")
    n, d = q.numerator, q.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return UpperBound(Fraction(rn, rd), Fraction(0), "sqrt")
    # sqrt(n/d) = sqrt(n*d)/d; scale by a power of two so the ceil step
    # contributes at most tol
    m = 0
    while Fraction(1, d << m) > tol:
        m += 1
    scale = 1 << m
    s = math.isqrt(n * d * scale * scale)
    return UpperBound(Fraction(s + 1, d * scale), Fraction(1, d * scale), "sqrt")


def sqrt_lower(q: RationalLike, tol: RationalLike = DEFAULT_TOL) -> Fraction:
    """Rational l with 0 <= l <= sqrt(q) and sqrt(q) - l <= tol."""
    q = as_fraction(q)
    tol = as_fraction(tol)
    if q < 0:
        raise ValueError("sqrt_lower requires q >= 0")
    if q == 0:
        return Fraction(0)
    n, d = q.numerator, q.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    m = 0
    while Fraction(1, d << m) > tol:
        m += 1
    scale = 1 << m
    return Fraction(math.isqrt(n * d * scale * scale), d * scale)


def _exp_enclosure(y: Fraction, terms: int) -> tuple[Fraction, Fraction]:
    """(lower, upper) enclosure of exp(y) for 0 <= y <= 1 by a Taylor partial
    sum with an explicit geometric remainder majorant."""
    total = Fraction(1)
    term = Fraction(1)
    for k in range(1, terms + 1):
        term = term * y / k
        total += term
    tail_term = term * y / (terms + 1)
    # sum_{j>=0} (y/(terms+2))^j <= 1/(1 - y/(terms+2))
    ratio = y / (terms + 2)
    remainder = tail_term / (1 - ratio)
    return total, total + remainder


def _dyadic_down(x: Fraction, bits: int) -> Fraction:
    scale = 1 << bits
    return Fraction((x.numerator * scale) // x.denominator, scale)


def _dyadic_up(x: Fraction, bits: int) -> Fraction:
    scale = 1 << bits
    return Fraction(-((-x.numerator * scale) // x.denominator), scale)


def exp_upper(x: RationalLike, tol: RationalLike = DEFAULT_TOL) -> UpperBound:
    """Rational u with u >= e**x and u - e**x <= tol, for any rational x.

    Positive arguments use argument halving plus a truncated Taylor series
    with a rational remainder majorant; negative arguments bound e**-|x| by
    the reciprocal of a certified lower bound of e**|x|.
    """
    x = as_fraction(x)
    tol = as_fraction(tol)
    if tol <= 0:
        raise ValueError("exp_upper requires tol > 0")
    if x == 0:
        return UpperBound(Fraction(1), Fraction(0), "exp")

    y = abs(x)
    halvings = 0
    while y > 1:
        y /= 2
        halvings += 1

    # crude float estimate only sizes the working precision; rigor comes from
    # the exact enclosure below
    est = math.exp(min(float(abs(x)), 700.0)) + 2.0
    bits = max(96, int(math.log2(est / float(tol))) + 16 + 8 * halvings)

    terms = 4
    while True:
        lo, up = _exp_enclosure(y, terms)
        lo = _dyadic_down(lo, bits)
        up = _dyadic_up(up, bits)
        for _ in range(halvings):
            lo = _dyadic_down(lo * lo, bits)
            up = _dyadic_up(up * up, bits)
        if x > 0:
            gap = up - lo
            if gap <= tol:
                return UpperBound(up, gap, "exp")
        else:
            # e**x = 1/e**|x| in [1/up, 1/lo]
            value = _dyadic_up(1 / lo, bits)
            gap = value - _dyadic_down(1 / up, bits)
            if gap <= tol:
                return UpperBound(value, gap, "exp")
        terms += max(4, terms // 2)
        bits += 32


def abs_upper(z: GaussianRational, tol: RationalLike = DEFAULT_TOL) -> UpperBound:
    """Certified upper bound of |z|; exact when z is purely real or purely
    imaginary (the only cases that occur in the reference families)."""
    if not z.im:
        return UpperBound(abs(z.re), Fraction(0), "abs")
    if not z.re:
        return UpperBound(abs(z.im), Fraction(0), "abs")
    u = sqrt_upper(z.abs_squared(), tol)
    return UpperBound(u.value, u.tolerance, "abs")


# --------------------------------------------------------------------------
# Decimal formatting (report output and table comparison)
# --------------------------------------------------------------------------


def _decimal_exponent(x: Fraction) -> int:
    """Largest e with 10**e <= x, for x > 0."""
    n, d = x.numerator, x.denominator
    e = len(str(n)) - len(str(d))
    while 10**e * d > n:
        e -= 1
    while 10 ** (e + 1) * d <= n:
        e += 1
    return e


def round_sig(x: Fraction, sig: int) -> Fraction:
    """Round to `sig` significant decimal digits, half away from zero."""
    if x == 0:
        return Fraction(0)
    neg = x < 0
    ax = -x if neg else x
    e = _decimal_exponent(ax)
    quantum = Fraction(10) ** (e - sig + 1)
    units = ax / quantum
    rounded = (units.numerator * 2 + units.denominator) // (2 * units.denominator)
    out = rounded * quantum
    return -out if neg else out


def sci_str(x: Fraction, sig: int = 12) -> str:
    """Deterministic scientific notation with `sig` significant digits."""
    if x == 0:
        return "0"
    neg = x < 0
    ax = -x if neg else x
    e = _decimal_exponent(ax)
    units = ax / Fraction(10) ** (e - sig + 1)
    mant = (units.numerator * 2 + units.denominator) // (2 * units.denominator)
    if mant >= 10**sig:  # rounding bumped the mantissa over a power of ten
        mant //= 10
        e += 1
    digits = str(mant)
    body = digits[0] + "." + digits[1:] if sig > 1 else digits
    return f"{'-' if neg else ''}{body}e{e:+03d}"
