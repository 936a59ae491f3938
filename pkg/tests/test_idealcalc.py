"""Ideal calculus: normalization, membership, softness, idempotency."""

from __future__ import annotations

import math
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from idealkit.idealcalc import (
    COMPACT,
    FINITE_RANK,
    Compact,
    FiniteRank,
    Principal,
    ProductIdeal,
    ZeroIdealError,
    implication_report,
    is_idempotent,
    is_soft,
    make_ideal,
    member,
    necessary_soft_condition,
)
from idealkit.seqspace import (
    Ampliation,
    Exp,
    FiniteSupport,
    Mode,
    Pow,
    PowLog,
    Product,
    Scale,
    ampliate,
    eval_log,
    numeric_probe,
    support,
)

from conftest import BATTERY, FINITE_BATTERY

battery_expr = st.sampled_from(BATTERY)


class TestMakeIdeal:
    def test_rank_one_generator_collapses(self):
        assert make_ideal(Principal(FiniteSupport([1]))) == FINITE_RANK

    def test_principal_product_reduces(self):
        ideal = make_ideal(ProductIdeal(Principal(Pow(1)), Principal(Pow(2))))
        assert ideal == Principal(Product(Pow(1), Pow(2)))

    def test_compact_fixed_point(self):
        assert make_ideal(COMPACT) == COMPACT
        assert make_ideal(ProductIdeal(COMPACT, COMPACT)) == COMPACT

    def test_finite_rank_absorbs(self):
        assert make_ideal(ProductIdeal(FINITE_RANK, FINITE_RANK)) == FINITE_RANK
        ideal = make_ideal(ProductIdeal(Principal(Pow(1)), FINITE_RANK))
        assert isinstance(ideal, ProductIdeal) and ideal.right == FINITE_RANK

    def test_nested_soft_edge_flattens(self):
        ideal = make_ideal(
            ProductIdeal(ProductIdeal(Principal(Pow(1)), COMPACT), Principal(Pow(2)))
        )
        assert isinstance(ideal, ProductIdeal)
        assert ideal.right == COMPACT
        assert ideal.left == Principal(Product(Pow(1), Pow(2)))

    def test_zero_generator_rejected(self):
        with pytest.raises(ZeroIdealError):
            make_ideal(Principal(FiniteSupport([])))

    def test_product_reduction_membership_oracle(self):
        """Membership in the reduced product matches the two-sided battery."""
        left, right = Pow(1), Pow(2)
        reduced = make_ideal(ProductIdeal(Principal(left), Principal(right)))
        for zeta in BATTERY:
            got = member(zeta, reduced)
            brute = any(
                numeric_probe(
                    zeta,
                    Product(ampliate(m, left), ampliate(m, right)),
                    Mode.BIG_O,
                    2 ** 18,
                    1e-2,
                ).holds
                for m in range(1, 7)
            )
            if brute:
                assert got.holds, zeta


class TestMember:
    def test_exponential_in_faster_exponential_ideal(self):
        v = member(Exp(F(1, 2)), Principal(Exp(F(1, 4))))
        assert v.holds and v.evidence["m"] == 2

    def test_power_not_in_exponential_ideal(self):
        v = member(Pow(1), Principal(Exp(F(1, 2))))
        assert v.fails and v.proven
        probe = numeric_probe(Pow(1), ampliate(4, Exp(F(1, 2))), Mode.BIG_O, 2 ** 20, 1e-2)
        assert not probe.holds

    def test_generator_ampliation_is_member(self):
        assert member(Ampliation(5, Pow(2)), Principal(Pow(2))).holds

    def test_compact_contains_everything(self):
        for xi in BATTERY + FINITE_BATTERY:
            assert member(xi, COMPACT).holds

    def test_finite_rank_membership(self):
        assert member(FiniteSupport([1, 1]), FINITE_RANK).holds
        assert member(Pow(1), FINITE_RANK).fails

    def test_soft_edge_excludes_generator_in_power_class(self):
        soft_edge = ProductIdeal(Principal(Pow(1)), COMPACT)
        assert member(Pow(1), Principal(Pow(1))).holds
        assert member(Pow(1), soft_edge).fails
        assert member(PowLog(1, 1), soft_edge).holds

    def test_soft_edge_of_exponential_keeps_generator(self):
        soft_edge = ProductIdeal(Principal(Exp(F(1, 2))), COMPACT)
        assert member(Exp(F(1, 2)), soft_edge).holds

    @given(xi=st.sampled_from(FINITE_BATTERY), eta=battery_expr)
    def test_calkin_sandwich(self, xi, eta):
        assert member(xi, Principal(eta)).holds
        assert member(eta, COMPACT).holds

    @given(xi=battery_expr, m=st.integers(1, 8))
    def test_ampliation_invariance(self, xi, m):
        assert member(ampliate(m, xi), Principal(xi)).holds

    @given(zeta=battery_expr, xi=battery_expr)
    @settings(max_examples=200)
    def test_hereditary(self, zeta, xi):
        from idealkit.seqspace import compare

        if compare(zeta, xi, Mode.BIG_O).holds:
            assert member(zeta, Principal(xi)).holds


class TestSoft:
    def test_exponential_soft(self):
        v = is_soft(Principal(Exp(F(1, 2))))
        assert v.holds and v.proven and v.evidence["k"] == 2

    def test_harmonic_not_soft(self):
        v = is_soft(Principal(Pow(1)))
        assert v.fails and v.proven
        assert v.evidence["limiting_ratio"] == F(1, 2)

    def test_finite_rank_soft(self):
        assert is_soft(FINITE_RANK).holds
        assert is_soft(COMPACT).holds

    def test_soft_edge_soft_by_construction(self):
        assert is_soft(ProductIdeal(Principal(Pow(1)), COMPACT)).holds

    def test_finite_support_generator_soft(self):
        assert is_soft(Principal(FiniteSupport([1, F(1, 2)]))).holds


class TestIdempotent:
    def test_exponential_idempotent(self):
        v = is_idempotent(Principal(Exp(F(1, 2))))
        assert v.holds
        m = v.evidence["m"]
        # numeric oracle: ratio against the certified ampliation stays bounded
        gen = Exp(F(1, 2))
        target = ampliate(m, Product(gen, gen))
        ratios = [
            math.exp(eval_log(gen, 2 ** k) - eval_log(target, 2 ** k))
            for k in range(10, 21)
        ]
        assert max(ratios) < 16

    def test_harmonic_not_idempotent(self):
        v = is_idempotent(Principal(Pow(1)))
        assert v.fails and v.proven
        # numeric oracle: unbounded ratio for every small ampliation index
        gen = Pow(1)
        for m in range(1, 9):
            target = ampliate(m, Product(gen, gen))
            lo = math.exp(eval_log(gen, 2 ** 10) - eval_log(target, 2 ** 10))
            hi = math.exp(eval_log(gen, 2 ** 20) - eval_log(target, 2 ** 20))
            assert hi >= 100 * lo

    def test_classical_idempotents(self):
        assert is_idempotent(FINITE_RANK).holds
        assert is_idempotent(COMPACT).holds


class TestNecessaryCondition:
    def test_exponential_holds(self):
        v = necessary_soft_condition(Exp(F(1, 2)))
        assert v.holds and v.evidence["m"] == 2

    def test_harmonic_fails(self):
        v = necessary_soft_condition(Pow(1))
        assert v.fails
        assert v.evidence["limiting_ratio"] == F(1, 2)

    def test_pure_log_fails(self):
        v = necessary_soft_condition(PowLog(0, 1))
        assert v.fails
        probe = numeric_probe(
            PowLog(0, 1), ampliate(3, PowLog(0, 1)), Mode.LITTLE_O, 2 ** 20, 1e-3
        )
        assert not probe.holds

    def test_finite_support_is_an_error(self):
        with pytest.raises(ValueError):
            necessary_soft_condition(FiniteSupport([1]))


class TestImplicationReport:
    def test_power_two(self):
        rep = implication_report(Pow(2))
        assert rep.delta2.holds
        assert rep.soft.fails
        assert rep.idempotent.fails
        assert rep.necessary.fails
        assert all(ok for _, ok in rep.flags)

    def test_slow_exponential(self):
        rep = implication_report(Exp(F(9, 10)))
        assert rep.delta2.fails
        assert rep.soft.holds
        assert rep.idempotent.holds
        assert rep.necessary.holds

    def test_power_log(self):
        rep = implication_report(PowLog(1, 1))
        assert rep.delta2.holds
        assert rep.soft.fails

    @given(xi=battery_expr)
    def test_battery_audit(self, xi):
        rep = implication_report(xi)  # raises on any violated implication
        assert all(ok for _, ok in rep.flags)

    @given(xi=battery_expr)
    def test_softness_delta2_exclusion(self, xi):
        from idealkit.seqspace import delta2_check

        assert not (is_soft(Principal(xi)).holds and delta2_check(xi).holds)
