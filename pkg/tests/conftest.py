"""Shared catalog battery and helpers for the test suite."""

from __future__ import annotations

from fractions import Fraction as F

import pytest

from idealkit.seqspace import (
    Ampliation,
    Exp,
    Explicit,
    FiniteSupport,
    Pow,
    PowLog,
    Product,
    Scale,
    explicit,
    has_exact_eval,
    subsample,
    support,
)

# Infinite-support catalog battery; at least twenty expressions covering the
# power, exponential and power-log decay classes under every combinator.
BATTERY = [
    Pow(1),
    Pow(2),
    Pow(3),
    Pow(F(1, 2)),
    Pow(F(5, 2)),
    Exp(F(1, 2)),
    Exp(F(1, 4)),
    Exp(F(9, 10)),
    Exp(F(1, 8)),
    PowLog(1, 1),
    PowLog(2, 1),
    PowLog(0, 1),
    PowLog(1, -1),
    PowLog(F(1, 2), 2),
    Scale(7, Pow(2)),
    Scale(F(1, 3), Exp(F(1, 2))),
    Ampliation(2, Pow(1)),
    Ampliation(3, Exp(F(1, 8))),
    Ampliation(5, Pow(2)),
    Product(Pow(1), Pow(2)),
    Product(Exp(F(1, 2)), Pow(1)),
    Product(Pow(1), PowLog(0, 1)),
    explicit([1, F(1, 2)], Pow(3)),
    explicit([2, 1], Exp(F(1, 2))),
    subsample(2, Pow(1)),
    Scale(F(3, 2), Ampliation(2, PowLog(1, 1))),
]

FINITE_BATTERY = [
    FiniteSupport([1, F(1, 2), F(1, 4)]),
    FiniteSupport([1]),
    FiniteSupport([]),
    Ampliation(3, FiniteSupport([1, F(1, 2)])),
    Explicit((F(3), F(2)), FiniteSupport([1, 1])),
]

FULL_BATTERY = BATTERY + FINITE_BATTERY

EXACT_BATTERY = [e for e in FULL_BATTERY if has_exact_eval(e)]

assert len(BATTERY) >= 20
assert all(support(e) is None for e in BATTERY)


def battery_ids(exprs):
    from idealkit.dsl import format_seq

    return [format_seq(e) for e in exprs]


@pytest.fixture(scope="session")
def battery():
    return list(BATTERY)


@pytest.fixture(scope="session")
def full_battery():
    return list(FULL_BATTERY)
