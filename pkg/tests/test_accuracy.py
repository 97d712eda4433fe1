from __future__ import annotations

from fractions import Fraction

import pytest

from whcert.accuracy import (
    cor51_bounds,
    general_canonical_bounds,
    odd_theta_accuracy,
    perturbed_inverse_bound,
)
from whcert.exactmath import parse_decimal, round_sig, ub_exact


def test_perturbed_inverse_examples():
    assert perturbed_inverse_bound(ub_exact(2), ub_exact(0), ub_exact(Fraction(1, 2))).value == 0
    got = perturbed_inverse_bound(
        ub_exact(2), ub_exact(Fraction(1, 10)), ub_exact(Fraction(1, 2))
    )
    assert got.value == Fraction(4, 5)
    assert perturbed_inverse_bound(ub_exact(2), ub_exact(1), ub_exact(1)) is None


def test_general_bounds_zero_diff():
    rep = general_canonical_bounds(
        ub_exact(1), ub_exact(1), ub_exact(1), ub_exact(1), ub_exact(1),
        ub_exact(0), ub_exact(Fraction(1, 2)),
    )
    assert rep.delta_inv_plus.value == 0
    assert rep.delta_minus.value == 0
    assert rep.delta_plus is not None and rep.delta_plus.value == 0


def test_general_bounds_unit_example():
    d = Fraction(1, 100)
    rep = general_canonical_bounds(
        ub_exact(1), ub_exact(1), ub_exact(1), ub_exact(1), ub_exact(1),
        ub_exact(d), ub_exact(Fraction(1, 2)),
    )
    assert rep.delta_inv_plus.value == 2 * d  # ||A0||/(1-q) * 1 * d


def test_general_bounds_q_gate():
    rep = general_canonical_bounds(
        ub_exact(1), ub_exact(1), ub_exact(1), ub_exact(1), ub_exact(1),
        ub_exact(1), ub_exact(Fraction(3, 2)),
    )
    assert rep.delta_inv_plus is None and rep.delta_minus is None and rep.delta_plus is None


def test_cor51_q_gate():
    rep = cor51_bounds(ub_exact(1), ub_exact(1), ub_exact(2), ub_exact(2), ub_exact(1))
    assert rep.delta_minus is None and rep.reason == "q_N >= 1"
    assert rep.gamma_n is not None  # gamma is still reported


def test_cor51_gamma_gate_and_q_plus_branch():
    # gamma = 4 * delta * ||a+|| * prod^2; pick numbers with gamma = 3/4
    delta = ub_exact(Fraction(3, 16))
    rep = cor51_bounds(delta, ub_exact(1), ub_exact(1), ub_exact(1), ub_exact(1))
    assert rep.gamma_n.value == Fraction(3, 4)
    assert rep.q_plus_n is not None
    assert Fraction(0) < rep.q_plus_n.value <= Fraction(1, 2)
    # q+ solves q(1-q) = gamma/4 with the smaller root: (1 - 1/2)/2 = 1/4
    assert abs(rep.q_plus_n.value - Fraction(1, 4)) < Fraction(1, 10**9)
    assert rep.delta_plus is not None


def test_cor51_gamma_unavailable_above_one():
    delta = ub_exact(Fraction(1, 3))
    rep = cor51_bounds(delta, ub_exact(1), ub_exact(1), ub_exact(1), ub_exact(1))
    # q = 1/3 < 1 keeps the minus bound, but gamma = 4/3 > 1 blocks delta_plus
    assert rep.gamma_n.value == Fraction(4, 3)
    assert rep.delta_minus is not None
    assert rep.delta_plus is None and rep.q_plus_n is None
    assert "gamma" in rep.reason


def test_odd_theta_unavailable():
    rep = odd_theta_accuracy(-7)
    assert rep.delta_plus is None and rep.delta_minus is None and rep.gamma_n is None
    assert "odd-theta" in rep.reason
    with pytest.raises(ValueError):
        odd_theta_accuracy(6)


def test_outputs_shrink_with_delta():
    small = cor51_bounds(ub_exact(Fraction(1, 10**6)), ub_exact(7), ub_exact(6), ub_exact(31), ub_exact(7))
    smaller = cor51_bounds(ub_exact(Fraction(1, 10**8)), ub_exact(7), ub_exact(6), ub_exact(31), ub_exact(7))
    assert smaller.delta_plus.value < small.delta_plus.value
    assert smaller.delta_minus.value < small.delta_minus.value
    assert smaller.gamma_n.value < small.gamma_n.value


def test_family1_n15_bounds(run61):
    from whcert.harness import accuracy_for_report

    rep = next(r for r in run61 if r.n == 15)
    acc = accuracy_for_report(rep)
    assert round_sig(acc.delta_plus.value, 4) == parse_decimal("1.275e-3")
    assert round_sig(acc.delta_minus.value, 4) == parse_decimal("3.490e-4")
