from __future__ import annotations

import os
import sys
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from whcert.criterion import certify_stability
from whcert.exactmath import parse_decimal, round_sig
from whcert.families import ex61_family, ex62_family, ex63_family
from whcert.harness import accuracy_for_report
from whcert.tailbounds import BoundContext

JOBS = min(2, os.cpu_count() or 1)


def sig_digits(cell: str) -> int:
    mant = cell.split("e")[0].split("E")[0].lstrip("+-").replace(".", "").lstrip("0")
    return max(1, len(mant))


def assert_cell(ours: Fraction, cell: str, rel: float = 1e-6, label: str = "") -> None:
    """Compare a computed exact value against a printed table cell at the
    cell's own precision, then within `rel` relatively."""
    ref = parse_decimal(cell)
    if ref == 0:
        assert ours == 0, f"{label}: expected exact zero, got {float(ours)}"
        return
    rounded = round_sig(ours, sig_digits(cell))
    err = abs(rounded - ref) / abs(ref)
    assert err <= Fraction(rel).limit_denominator(10**12) + Fraction(1, 10**15), (
        f"{label}: ours={float(ours)!r} rounded={float(rounded)!r} "
        f"table={cell} rel_err={float(err):.3e}"
    )


@pytest.fixture(scope="session")
def fam61():
    return ex61_family(Fraction(1, 5), Fraction(5))


@pytest.fixture(scope="session")
def fam62():
    return ex62_family(Fraction(1, 5), Fraction(1), 3)


@pytest.fixture(scope="session")
def fam63():
    return ex63_family(Fraction(1), Fraction(1, 2), -7)


@pytest.fixture(scope="session")
def run61(fam61):
    """Family 1 pipeline to N=40 at the canonical (1/5, 5)."""
    ctx = BoundContext(Fraction(1, 5), Fraction(5))
    return certify_stability(fam61.streams, 0, range(1, 41), ctx, jobs=JOBS)


@pytest.fixture(scope="session")
def run62(fam62):
    ctx = BoundContext(Fraction(1, 4), Fraction(4))
    return certify_stability(fam62.streams, 6, range(1, 31), ctx, jobs=JOBS)


@pytest.fixture(scope="session")
def run63(fam63):
    ctx = BoundContext(Fraction(1, 10), Fraction(10))
    return certify_stability(fam63.streams, -7, range(1, 31), ctx, jobs=JOBS)


@pytest.fixture(scope="session")
def acc61(run61):
    return {r.n: accuracy_for_report(r) for r in run61}


@pytest.fixture(scope="session")
def acc62(run62):
    return {r.n: accuracy_for_report(r) for r in run62}
