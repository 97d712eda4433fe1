from __future__ import annotations

from fractions import Fraction

import pytest

from whcert.exactmath import GaussianRational, parse_decimal
from whcert.families import (
    EX61_MINUS_FACTOR_REFERENCE_N15,
    ex61_family,
    ex62_family,
    ex63_family,
    factor_coefficient_check,
    family_from_spec,
)
from whcert.laurent import det2, monomial
from whcert.tailbounds import BoundContext, delta_n, truncate

GR = GaussianRational.of


# -- independent closed-form coefficient implementations (the oracle pair) ------


def double_factorial(n: int) -> int:
    out = 1
    while n > 1:
        out *= n
        n -= 2
    return out


def ex61_alpha_direct(n: int, k2: Fraction) -> GaussianRational:
    if n % 2 or n < 0:
        return GR(0)
    if n == 0:
        return GR(k2)
    m = n // 2
    return GR(-k2 * Fraction(double_factorial(2 * m - 3), double_factorial(2 * m)) / k2 ** (2 * m))


def ex61_beta_direct(n: int, k1: Fraction) -> GaussianRational:
    # coefficient of t^-n
    if n < 1 or n % 2 == 0:
        return GR(0)
    if n == 1:
        return GR(0, 1)
    m = (n - 1) // 2
    return GR(0, -(k1 ** (2 * m)) * Fraction(double_factorial(2 * m - 3), double_factorial(2 * m)))


def ex62_beta_direct(n: int, k1: Fraction) -> GaussianRational:
    if n < 1 or n % 2 == 0:
        return GR(0)
    if n == 1:
        return GR(1)
    m = (n - 1) // 2
    sign = -1 if m % 2 else 1
    return GR(sign * Fraction(double_factorial(2 * m - 1), double_factorial(2 * m)) * k1 ** (2 * m))


def factorial(n: int) -> int:
    out = 1
    for k in range(2, n + 1):
        out *= k
    return out


def test_ex61_coefficients_match_direct_formula(fam61):
    for n in range(0, 41):
        assert fam61.streams.plus.coeff(n) == ex61_alpha_direct(n, Fraction(5))
    for n in range(1, 42):
        assert fam61.streams.minus.coeff(n) == ex61_beta_direct(n, Fraction(1, 5))


def test_ex61_first_terms(fam61):
    # alpha^(2) = 5 - t^2/10 and beta^(1) = i/t
    assert fam61.streams.plus.coeff(0) == GR(5)
    assert fam61.streams.plus.coeff(2) == GR(Fraction(-1, 10))
    assert fam61.streams.minus.coeff(1) == GR(0, 1)


def test_ex62_coefficients_match_direct_formula(fam62):
    for n in range(0, 41):
        assert fam62.streams.plus.coeff(n) == GR(Fraction(1, factorial(n)))
    for n in range(1, 42):
        assert fam62.streams.minus.coeff(n) == ex62_beta_direct(n, Fraction(1, 5))


def test_ex62_beta_leading_terms(fam62):
    # 1/t - k1^2/(2 t^3) + ...
    assert fam62.streams.minus.coeff(1) == GR(1)
    assert fam62.streams.minus.coeff(3) == GR(Fraction(-1, 50))
    assert fam62.streams.minus.coeff(5) == GR(Fraction(3, 8) * Fraction(1, 625))


def test_ex63_coefficients(fam63):
    for n in range(1, 41):
        assert fam63.streams.minus.coeff(n) == GR(Fraction(1, factorial(n - 1)))
    for n in range(0, 41):
        assert fam63.streams.plus.coeff(n) == GR(Fraction(1, 2) ** n / factorial(n))


def test_truncation_determinants(fam61, fam62, fam63):
    for fam in (fam61, fam62, fam63):
        for n in (1, 5, 17):
            assert det2(truncate(fam.streams, fam.theta, n)) == monomial(fam.theta)


def test_closed_form_matches_generic(fam61, fam62, fam63):
    for fam in (fam61, fam62, fam63):
        ctx = BoundContext(*fam.default_zeta)
        for n in (1, 6, 13, 24):
            generic = delta_n(fam.streams, n, ctx).value
            closed = fam.closed_form_delta(n, Fraction(1, 10**15)).value
            assert abs(generic - closed) / closed < Fraction(1, 10**9)


def test_parameter_domain_validation():
    with pytest.raises(ValueError):
        ex61_family(Fraction(2), Fraction(5))
    with pytest.raises(ValueError):
        ex62_family(Fraction(2), Fraction(1), 3)
    with pytest.raises(ValueError):
        ex63_family(Fraction(1), Fraction(1, 2), -8)


def test_family_from_spec():
    fam = family_from_spec({"family": "ex61", "k1": "1/5", "k2": "5"})
    assert fam.theta == 0 and fam.default_zeta == (Fraction(1, 5), Fraction(5))
    fam = family_from_spec({"family": "ex63"})
    assert fam.theta == -7
    fin = family_from_spec(
        {
            "family": "finite",
            "theta": 0,
            "alpha": [{"re": "1", "im": "0"}],
            "beta": [{"re": "0", "im": "1"}],
        }
    )
    assert fin.streams.plus.coeff(0) == GR(1)
    assert fin.streams.minus.coeff(1) == GR(0, 1)
    with pytest.raises(ValueError):
        family_from_spec({"family": "nope"})


def test_reference_listing_shape():
    table = EX61_MINUS_FACTOR_REFERENCE_N15
    assert set(table) == {(0, 0), (0, 1), (1, 0), (1, 1)}
    for entry in table.values():
        assert set(entry) == {0} | {-k for k in range(1, 16)}


def test_factor_coefficient_check_n15(run61):
    rep = next(r for r in run61 if r.n == 15)
    check = factor_coefficient_check(rep.factorisation.a_minus, 15)
    assert check.compared == 64
    assert check.max_abs_deviation <= Fraction(1, 10**8)
    assert check.max_off_axis == 0
    with pytest.raises(ValueError):
        factor_coefficient_check(rep.factorisation.a_minus, 14)
