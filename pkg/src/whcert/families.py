"""The three built-in reference families of canonical matrix functions, with
exact Q(i) coefficient streams, certified majorants, the published closed
forms for delta_N at the canonical (zeta1, zeta2) points, and the embedded
10-digit reference listing of the N=15 normalised minus factor of the first
family.

Family 1 (square-root branches, theta = 0):
    alpha(t) = sqrt(k2**2 - t**2) branch positive at 0, analytic in |t| < k2,
    beta(t)  = t**-2 sqrt(k1**2 - t**2) branch with value i/t at infinity,
    both extend continuously to the closed annulus, so the majorants
    M+(z) = sqrt(k2**2 + z**2) and M-(z) = sqrt(k1**2 + z**2)/z**2 are valid
    at the endpoints z = k2 and z = k1.

Family 2 (exponential / inverse square root, theta = 2*nu):
    alpha(t) = exp(k2 t) entire, M+(z) = exp(|k2| z);
    beta(t) = (k1**2 + t**2)**-1/2, analytic only in the open |t| > k1,
    M-(z) = (z**2 - k1**2)**-1/2 on the open interval.

Family 3 (double exponential, odd theta):
    alpha(t) = exp(k2 t) entire; beta(t) = exp(k1/t)/t analytic in the
    punctured plane, M-(z) = exp(|k1|/z)/z for any 0 < z < 1.

Coefficient streams are generated by first-order ratio recurrences and
cached; an independent closed-form implementation lives in the test suite
and must agree exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .exactmath import (
    DEFAULT_TOL,
    GR_I,
    GR_ONE,
    GaussianRational,
    UpperBound,
    as_fraction,
    exp_upper,
    parse_decimal,
    sqrt_upper,
    ub_add,
    ub_exact,
    ub_scale,
)
from .tailbounds import CoefficientStream, StreamPair, finite_minus_stream, finite_plus_stream

__all__ = [
    "ExampleFamily",
    "ex61_family",
    "ex62_family",
    "ex63_family",
    "family_from_spec",
    "FAMILY_DEFAULTS",
    "EX61_MINUS_FACTOR_REFERENCE_N15",
]

ClosedForm = Callable[[int, Fraction], UpperBound]


@dataclass(frozen=True)
class ExampleFamily:
    id: str
    k1: Fraction
    k2: Fraction
    theta: int
    streams: StreamPair
    default_zeta: tuple[Fraction, Fraction]
    closed_form_delta: ClosedForm | None = None


def _cached(seq: Callable[[list], None]) -> Callable[[int], GaussianRational]:
    """Wrap a list-extending generator into an index-addressed oracle."""
    cache: list[GaussianRational] = []

    def get(n: int) -> GaussianRational:
        while len(cache) <= n:
            seq(cache)
        return cache[n]

    return get


# --------------------------------------------------------------------------
# Family 1: theta = 0, square-root branches
# --------------------------------------------------------------------------


def ex61_family(k1: Fraction | str, k2: Fraction | str) -> ExampleFamily:
    k1 = as_fraction(k1)
    k2 = as_fraction(k2)
    if not (0 < k1 < 1 < k2):
        raise ValueError("family 1 requires 0 < k1 < 1 < k2")

    # alpha: even powers only; c(2n+2) = c(2n) * (2n-1) / ((2n+2) k2^2)
    def extend_alpha(cache: list) -> None:
        n = len(cache)
        if n == 0:
            cache.append(GaussianRational.of(k2))
        elif n % 2 == 1:
            cache.append(GaussianRational.of(0))
        elif n == 2:
            cache.append(GaussianRational.of(-1 / (2 * k2)))
        else:
            m = n // 2 - 1  # previous even index 2m
            prev = cache[n - 2]
            cache.append(prev.scale(Fraction(2 * m - 1, 2 * m + 2) / (k2 * k2)))

    # beta: odd negative powers; coeff index n is the coefficient of t^-n
    def extend_beta(cache: list) -> None:
        n = len(cache)
        if n == 0:
            cache.append(GaussianRational.of(0))  # unused placeholder for t^0
        elif n == 1:
            cache.append(GR_I)
        elif n % 2 == 0:
            cache.append(GaussianRational.of(0))
        elif n == 3:
            cache.append(GR_I.scale(-k1 * k1 / 2))
        else:
            m = (n - 2) // 2  # previous odd index 2m+1
            prev = cache[n - 2]
            cache.append(prev.scale(Fraction(2 * m - 1, 2 * m + 2) * (k1 * k1)))

    def maj_plus(zeta: Fraction, tol: Fraction) -> UpperBound:
        return sqrt_upper(k2 * k2 + zeta * zeta, tol)

    def maj_minus(zeta: Fraction, tol: Fraction) -> UpperBound:
        return ub_scale(sqrt_upper(k1 * k1 + zeta * zeta, tol * zeta * zeta), 1 / (zeta * zeta))

    plus = CoefficientStream("plus", _cached(extend_alpha), k2, maj_plus, closed_endpoint=True)
    minus = CoefficientStream("minus", _cached(extend_beta), k1, maj_minus, closed_endpoint=True)

    closed: ClosedForm | None = None
    if (k1, k2) == (Fraction(1, 5), Fraction(5)):
        def closed(n: int, tol: Fraction = DEFAULT_TOL) -> UpperBound:
            # (15 + 2 sqrt 2)/4 * 5^(1-N) at the corner point (1/5, 5)
            core = ub_add(15, ub_scale(sqrt_upper(2, tol), 2))
            return ub_scale(core, Fraction(5) ** (1 - n) / 4)

    return ExampleFamily(
        "ex61", k1, k2, 0, StreamPair(plus, minus), (k1, k2), closed
    )


# --------------------------------------------------------------------------
# Family 2: theta = 2 nu, exponential against inverse square root
# --------------------------------------------------------------------------


def ex62_family(k1: Fraction | str, k2: Fraction | str, nu: int) -> ExampleFamily:
    k1 = as_fraction(k1)
    k2 = as_fraction(k2)
    if not (0 < k1 < 1):
        raise ValueError("family 2 requires 0 < k1 < 1")

    def extend_alpha(cache: list) -> None:
        n = len(cache)
        if n == 0:
            cache.append(GR_ONE)
        else:
            cache.append(cache[n - 1].scale(k2 / n))

    # beta: 1/t * (1 + sum (-1)^n (2n-1)!!/(2n)!! k1^(2n) t^(-2n))
    def extend_beta(cache: list) -> None:
        n = len(cache)
        if n == 0:
            cache.append(GaussianRational.of(0))
        elif n == 1:
            cache.append(GR_ONE)
        elif n % 2 == 0:
            cache.append(GaussianRational.of(0))
        elif n == 3:
            cache.append(GaussianRational.of(-k1 * k1 / 2))
        else:
            m = (n - 2) // 2
            prev = cache[n - 2]
            cache.append(prev.scale(Fraction(-(2 * m + 1), 2 * m + 2) * (k1 * k1)))

    def maj_plus(zeta: Fraction, tol: Fraction) -> UpperBound:
        return exp_upper(abs(k2) * zeta, tol)

    def maj_minus(zeta: Fraction, tol: Fraction) -> UpperBound:
        return sqrt_upper(1 / (zeta * zeta - k1 * k1), tol)

    plus = CoefficientStream("plus", _cached(extend_alpha), None, maj_plus)
    minus = CoefficientStream("minus", _cached(extend_beta), k1, maj_minus, closed_endpoint=False)

    closed: ClosedForm | None = None
    if (k1, k2) == (Fraction(1, 5), Fraction(1)):
        def closed(n: int, tol: Fraction = DEFAULT_TOL) -> UpperBound:
            # (109 e^4 + 60)/27 * 4^-N at (1/4, 4)
            core = ub_add(ub_scale(exp_upper(Fraction(4), tol), 109), 60)
            return ub_scale(core, Fraction(4) ** (-n) / 27)

    return ExampleFamily(
        "ex62", k1, k2, 2 * nu, StreamPair(plus, minus), (Fraction(1, 4), Fraction(4)), closed
    )


# --------------------------------------------------------------------------
# Family 3: odd theta, double exponential
# --------------------------------------------------------------------------


def ex63_family(k1: Fraction | str, k2: Fraction | str, theta: int) -> ExampleFamily:
    k1 = as_fraction(k1)
    k2 = as_fraction(k2)
    if theta % 2 == 0:
        raise ValueError("family 3 runs with odd theta")

    def extend_alpha(cache: list) -> None:
        n = len(cache)
        if n == 0:
            cache.append(GR_ONE)
        else:
            cache.append(cache[n - 1].scale(k2 / n))

    # beta(t) = exp(k1/t)/t: coefficient of t^-n is k1^(n-1)/(n-1)!
    def extend_beta(cache: list) -> None:
        n = len(cache)
        if n == 0:
            cache.append(GaussianRational.of(0))
        elif n == 1:
            cache.append(GR_ONE)
        else:
            cache.append(cache[n - 1].scale(k1 / (n - 1)))

    def maj_plus(zeta: Fraction, tol: Fraction) -> UpperBound:
        return exp_upper(abs(k2) * zeta, tol)

    def maj_minus(zeta: Fraction, tol: Fraction) -> UpperBound:
        return ub_scale(exp_upper(abs(k1) / zeta, tol * zeta), 1 / zeta)

    plus = CoefficientStream("plus", _cached(extend_alpha), None, maj_plus)
    minus = CoefficientStream("minus", _cached(extend_beta), Fraction(0), maj_minus)

    closed: ClosedForm | None = None
    if (k1, k2) == (Fraction(1), Fraction(1, 2)):
        def closed(n: int, tol: Fraction = DEFAULT_TOL) -> UpperBound:
            # (10/9 e^10 + 110/81 e^15 + 1/9 e^5) * 10^-N at (1/10, 10)
            core = ub_add(
                ub_scale(exp_upper(Fraction(10), tol), Fraction(10, 9)),
                ub_scale(exp_upper(Fraction(15), tol), Fraction(110, 81)),
                ub_scale(exp_upper(Fraction(5), tol), Fraction(1, 9)),
            )
            return ub_scale(core, Fraction(10) ** (-n))

    return ExampleFamily(
        "ex63", k1, k2, theta, StreamPair(plus, minus), (Fraction(1, 10), Fraction(10)), closed
    )


# --------------------------------------------------------------------------
# Spec-file loader
# --------------------------------------------------------------------------

FAMILY_DEFAULTS = {
    "ex61": {"k1": Fraction(1, 5), "k2": Fraction(5), "theta": 0},
    "ex62": {"k1": Fraction(1, 5), "k2": Fraction(1), "theta": 6},
    "ex63": {"k1": Fraction(1), "k2": Fraction(1, 2), "theta": -7},
}


def family_from_spec(spec: dict) -> ExampleFamily:
    """Build a family from a stream-spec mapping, e.g.
    {"family": "ex61", "k1": "1/5", "k2": "5"} or
    {"family": "finite", "theta": 0, "alpha": [...], "beta": [...]}."""
    fam = spec.get("family")
    if fam in ("ex61", "ex62", "ex63"):
        defaults = FAMILY_DEFAULTS[fam]
        k1 = as_fraction(spec.get("k1", defaults["k1"]))
        k2 = as_fraction(spec.get("k2", defaults["k2"]))
        theta = int(spec.get("theta", defaults["theta"]))
        if fam == "ex61":
            if theta != 0:
                raise ValueError("family 1 has theta = 0")
            return ex61_family(k1, k2)
        if fam == "ex62":
            if theta % 2:
                raise ValueError("family 2 has even theta")
            return ex62_family(k1, k2, theta // 2)
        return ex63_family(k1, k2, theta)
    if fam == "finite":
        from .exactmath import gr_from_json

        alpha = [gr_from_json(c) for c in spec.get("alpha", [])]
        beta = [gr_from_json(c) for c in spec.get("beta", [])]
        theta = int(spec.get("theta", 0))
        pair = StreamPair(finite_plus_stream(alpha), finite_minus_stream(beta))
        return ExampleFamily("finite", Fraction(0), Fraction(0), theta, pair, (Fraction(1, 2), Fraction(2)))
    raise ValueError(f"unknown stream family {fam!r}")


# --------------------------------------------------------------------------
# Reference listing: normalised minus factor at N = 15 for family 1 with
# (k1, k2) = (1/5, 5).  Ten significant digits per coefficient; axis marks
# whether the printed decimal is the real or imaginary part (the other part
# is zero).  The t^-7 coefficient of entry (2,1) is imaginary like every
# other odd power in that entry.
# --------------------------------------------------------------------------

_REF = {
    (0, 0): {
        0: ("re", "1"),
        -1: ("im", "-5.003000600"),
        -2: ("re", "-0.01000500140"),
        -3: ("im", "0.1000000100"),
        -4: ("re", "-0.1000600220e-4"),
        -5: ("im", "0.9998000600e-3"),
        -6: ("re", "-0.2001300540e-5"),
        -7: ("im", "0.1999400060e-4"),
        -8: ("re", "-5.003401521e-8"),
        -9: ("im", "4.998200040e-7"),
        -10: ("re", "-1.400980460e-9"),
        -11: ("im", "1.399439988e-8"),
        -12: ("re", "-4.203000600e-11"),
        -13: ("im", "4.198200768e-10"),
        -14: ("re", "-1.320528106e-12"),
        -15: ("im", "1.320264158e-11"),
    },
    (0, 1): {
        0: ("re", "0"),
        -1: ("im", "1.000200000"),
        -2: ("re", "0.2000199880e-2"),
        -3: ("im", "-0.2000400120e-1"),
        -4: ("re", "0.2000399960e-4"),
        -5: ("im", "-0.2000400160e-3"),
        -6: ("re", "4.001000040e-7"),
        -7: ("im", "-0.4000800360e-5"),
        -8: ("re", "1.000280032e-8"),
        -9: ("im", "-1.000200096e-7"),
        -10: ("re", "2.800840136e-10"),
        -11: ("im", "-2.800560280e-9"),
        -12: ("re", "8.402638799e-12"),
        -13: ("im", "-8.401680864e-11"),
        -14: ("re", "2.639999789e-13"),
        -15: ("im", "-2.640528106e-12"),
    },
    (1, 0): {
        0: ("re", "0"),
        -1: ("im", "-25.02500400"),
        -2: ("re", "-0.05001499900"),
        -3: ("im", "0.4999000500"),
        -4: ("re", "-0.5000999299e-3"),
        -5: ("im", "0.4997000400e-2"),
        -6: ("re", "-0.1000149790e-4"),
        -7: ("im", "0.9992000700e-4"),
        -8: ("re", "-2.500299359e-7"),
        -9: ("im", "0.2497700160e-5"),
        -10: ("re", "-7.000697979e-9"),
        -11: ("im", "6.993000420e-8"),
        -12: ("re", "-2.100179772e-10"),
        -13: ("im", "2.097780120e-9"),
        -14: ("re", "-6.602640528e-12"),
        -15: ("im", "6.601320792e-11"),
    },
    (1, 1): {
        0: ("re", "1"),
        -1: ("im", "5.003000600"),
        -2: ("re", "0.009998998599"),
        -3: ("im", "-0.09999999800"),
        -4: ("re", "0.9997997799e-4"),
        -5: ("im", "-0.9997998999e-3"),
        -6: ("re", "0.1999499460e-5"),
        -7: ("im", "-0.1999399700e-4"),
        -8: ("re", "4.998598479e-8"),
        -9: ("im", "-4.998199079e-7"),
        -10: ("re", "1.399579540e-9"),
        -11: ("im", "-1.399439708e-8"),
        -12: ("re", "4.198679400e-11"),
        -13: ("im", "-4.198199904e-10"),
        -14: ("re", "1.319999894e-12"),
        -15: ("im", "-1.320264053e-11"),
    },
}

EX61_MINUS_FACTOR_REFERENCE_N15 = {
    entry: {power: (axis, parse_decimal(text)) for power, (axis, text) in table.items()}
    for entry, table in _REF.items()
}


@dataclass(frozen=True)
class FactorCoefficientCheck:
    n: int
    max_abs_deviation: Fraction
    max_off_axis: Fraction
    compared: int


def factor_coefficient_check(minus_factor, n: int = 15) -> FactorCoefficientCheck:
    """Compare a normalised minus factor against the embedded 10-digit
    reference listing; returns the maximum absolute deviation over all listed
    coefficients and the largest magnitude seen on the axis that should be
    zero."""
    if n != 15:
        raise ValueError("reference data is available for N = 15 only")
    worst = Fraction(0)
    off_axis = Fraction(0)
    compared = 0
    for (i, j), table in EX61_MINUS_FACTOR_REFERENCE_N15.items():
        entry = minus_factor.entries[i][j]
        for power, (axis, ref) in table.items():
            c = entry.coeff(power)
            ours = c.re if axis == "re" else c.im
            other = c.im if axis == "re" else c.re
            worst = max(worst, abs(ours - ref))
            off_axis = max(off_axis, abs(other))
            compared += 1
    return FactorCoefficientCheck(n, worst, off_axis, compared)
