from __future__ import annotations

import random
from fractions import Fraction

import pytest

from whcert.errors import InadmissibleZetaError
from whcert.exactmath import GaussianRational, parse_decimal, sqrt_upper
from whcert.laurent import det2, monomial, wiener_norm_upper
from whcert.tailbounds import (
    BoundContext,
    GridSpec,
    StreamPair,
    delta_n,
    finite_minus_stream,
    finite_plus_stream,
    optimize_zeta,
    tail_norm_bounds,
    truncate,
    truncation_distance,
)

GR = GaussianRational.of


# -- truncation -----------------------------------------------------------------


def test_truncate_family1_n1(fam61):
    a1 = truncate(fam61.streams, 0, 1)
    assert a1.entries[0][1] == monomial(-1, GR(0, 1))
    assert a1.entries[1][0] == monomial(0, GR(5))
    assert det2(a1) == monomial(0)


def test_truncate_n0_has_no_minus_part(fam61):
    a0 = truncate(fam61.streams, 0, 0)
    assert a0.entries[0][1].is_zero()
    assert a0.entries[1][0] == monomial(0, GR(5))
    assert a0.entries[1][1] == monomial(0)


def test_truncate_family2_determinant(fam62):
    for n in (1, 3, 7):
        assert det2(truncate(fam62.streams, 6, n)) == monomial(6)


# -- tail bounds -------------------------------------------------------------------


def test_plus_tail_bound_example(fam61):
    norm, tail = tail_norm_bounds(fam61.streams.plus, Fraction(5), 4)
    # M+(5) = sqrt(50), ||alpha|| <= 5*sqrt(50)/4 = 25*sqrt(2)/4
    target = 25 * sqrt_upper(2, Fraction(1, 10**12)).value / 4
    assert abs(norm.value - target) <= Fraction(1, 10**9)
    assert tail.value == norm.value / 5**5


def test_minus_majorant_example(fam63):
    # M-(1/10) = 10 e^10
    m = fam63.streams.minus.majorant(Fraction(1, 10), Fraction(1, 10**9))
    assert abs(m.value - 10 * parse_decimal("22026.46579")) <= Fraction(1, 100)


def test_zero_stream_bounds():
    zero = finite_plus_stream([])
    norm, tail = tail_norm_bounds(zero, Fraction(2), 3)
    assert norm.value == 0 and tail.value == 0


def test_inadmissible_zeta_rejected(fam61):
    with pytest.raises(InadmissibleZetaError):
        tail_norm_bounds(fam61.streams.plus, Fraction(6), 3)  # beyond closed radius 5
    with pytest.raises(InadmissibleZetaError):
        tail_norm_bounds(fam61.streams.minus, Fraction(1, 6), 3)  # below closed radius 1/5
    with pytest.raises(InadmissibleZetaError):
        delta_n(fam61.streams, 3, BoundContext(Fraction(1, 2), Fraction(1)))


def test_open_endpoint_excluded(fam62):
    with pytest.raises(InadmissibleZetaError):
        tail_norm_bounds(fam62.streams.minus, Fraction(1, 5), 3)  # open at k1


# -- delta_N -----------------------------------------------------------------------


def test_delta_matches_table_values(fam61, fam62, fam63):
    d = delta_n(fam61.streams, 6, BoundContext(Fraction(1, 5), Fraction(5)))
    assert abs(d.value - parse_decimal("1.426e-3")) / parse_decimal("1.426e-3") < Fraction(1, 1000)
    d = delta_n(fam62.streams, 12, BoundContext(Fraction(1, 4), Fraction(4)))
    assert abs(d.value - parse_decimal("1.327e-5")) / parse_decimal("1.327e-5") < Fraction(1, 1000)
    d = delta_n(fam63.streams, 24, BoundContext(Fraction(1, 10), Fraction(10)))
    assert abs(d.value - parse_decimal("4.464e-18")) / parse_decimal("4.464e-18") < Fraction(1, 1000)


def test_delta_monotone_in_n(fam61, fam62, fam63):
    for fam in (fam61, fam62, fam63):
        ctx = BoundContext(*fam.default_zeta)
        values = [delta_n(fam.streams, n, ctx).value for n in range(1, 12)]
        assert all(a >= b for a, b in zip(values, values[1:]))


def test_delta_monotone_on_random_finite_streams():
    rng = random.Random(19)
    for _ in range(10):
        alpha = [GaussianRational(Fraction(rng.randint(-5, 5), rng.randint(1, 4)), Fraction(0))
                 for _ in range(rng.randint(1, 6))]
        beta = [GaussianRational(Fraction(0), Fraction(rng.randint(-5, 5), rng.randint(1, 4)))
                for _ in range(rng.randint(1, 6))]
        streams = StreamPair(finite_plus_stream(alpha), finite_minus_stream(beta))
        ctx = BoundContext(Fraction(1, 2), Fraction(2))
        values = [delta_n(streams, n, ctx).value for n in range(0, 10)]
        assert all(a >= b for a, b in zip(values, values[1:]))


def test_declared_budget_adds_a_correction(fam61):
    from dataclasses import replace

    ctx = BoundContext(Fraction(1, 5), Fraction(5))
    exact = delta_n(fam61.streams, 5, ctx).value
    fuzzy_plus = replace(fam61.streams.plus, approx_budget=Fraction(1, 10**6))
    fuzzy = StreamPair(fuzzy_plus, fam61.streams.minus)
    padded = delta_n(fuzzy, 5, ctx).value
    assert padded > exact
    assert padded - exact >= 6 * Fraction(1, 10**6)  # (N+1) coefficients' worth


# -- zeta optimisation ----------------------------------------------------------------


@pytest.mark.parametrize("n", [1, 10, 40, 100])
def test_optimize_zeta_family1_corner(fam61, n):
    z1, z2, _ = optimize_zeta(fam61.streams, n, Fraction(1, 100))
    assert (z1, z2) == (Fraction(1, 5), Fraction(5))


def test_optimize_zeta_one_sided_stream_ignores_dead_coordinate():
    streams = StreamPair(finite_plus_stream([GR(1), GR(2)]), finite_minus_stream([]))
    z1a, z2a, da = optimize_zeta(streams, 4, Fraction(1, 100))
    # the minus side contributes nothing, so the bound only depends on zeta2
    ctx = BoundContext(Fraction(1, 2), z2a)
    assert delta_n(streams, 4, ctx).value <= da.value * (1 + Fraction(1, 10**6))


def test_optimize_zeta_cap_monotone(fam62):
    _, _, d16 = optimize_zeta(fam62.streams, 8, Fraction(1, 100), GridSpec(cap=Fraction(16)))
    _, _, d32 = optimize_zeta(fam62.streams, 8, Fraction(1, 100), GridSpec(cap=Fraction(32)))
    assert d32.value <= d16.value


# -- truncation distances ---------------------------------------------------------------


def test_truncation_distance_zero(fam61):
    a5 = truncate(fam61.streams, 0, 5)
    assert truncation_distance(a5, a5).bound.value == 0


def test_truncation_distance_table_value(fam61):
    a40 = truncate(fam61.streams, 0, 40)
    a1 = truncate(fam61.streams, 0, 1)
    d = truncation_distance(a40, a1).bound
    assert d.tolerance == 0  # pure real/imaginary entries: exact value
    from whcert.exactmath import round_sig

    assert round_sig(d.value, 10) == parse_decimal("3.252250175e-1")


def test_sandwich_small_range(fam61):
    a12 = truncate(fam61.streams, 0, 12)
    ctx = BoundContext(Fraction(1, 5), Fraction(5))
    for n in range(1, 12):
        an = truncate(fam61.streams, 0, n)
        dist = truncation_distance(a12, an).bound.value
        assert dist <= delta_n(fam61.streams, n, ctx).value
