"""Sequence model: evaluation, validation, signatures, comparison, probes."""

from __future__ import annotations

import math
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from idealkit.seqspace import (
    Ampliation,
    Exp,
    Explicit,
    FiniteSupport,
    InvalidSequenceError,
    Mode,
    Method,
    Pow,
    PowLog,
    Product,
    Scale,
    Status,
    Subsample,
    ampliate,
    compare,
    delta2_check,
    eval_at,
    eval_log,
    explicit,
    numeric_probe,
    root_rational,
    signature_of,
    subsample,
    support,
    validate,
)

from conftest import BATTERY, EXACT_BATTERY, FULL_BATTERY, battery_ids

battery_expr = st.sampled_from(BATTERY)
full_expr = st.sampled_from(FULL_BATTERY)
index = st.integers(min_value=1, max_value=2 ** 16)


class TestEval:
    def test_exp_is_geometric(self):
        assert eval_at(Exp(F(1, 2)), 3) == F(1, 8)

    def test_ampliation_repeats_entries(self):
        assert eval_at(Ampliation(2, Pow(1)), 4) == F(1, 2)
        first_four = [eval_at(Ampliation(2, Pow(1)), n) for n in range(1, 5)]
        assert first_four == [1, 1, F(1, 2), F(1, 2)]

    def test_explicit_beyond_support(self):
        e = Explicit((F(1), F(1, 2)), FiniteSupport([F(1, 4)]))
        assert eval_at(e, 5) == 0
        assert eval_at(e, 3) == F(1, 4)

    def test_explicit_clamps_tail(self):
        e = Explicit((F(1, 8),), Pow(1))
        assert eval_at(e, 2) == F(1, 8)  # tail value 1 clamped down
        assert eval_at(e, 100) == F(1, 99)

    def test_index_must_be_positive(self):
        with pytest.raises(ValueError):
            eval_at(Pow(1), 0)

    def test_subsample_examples(self):
        assert eval_at(subsample(2, Exp(F(1, 2))), 3) == F(1, 64)
        fs = subsample(2, FiniteSupport([1, F(1, 2), F(1, 4)]))
        assert eval_at(fs, 1) == F(1, 2)
        assert eval_at(fs, 2) == 0

    @given(expr=st.sampled_from(EXACT_BATTERY), n=st.integers(1, 4096))
    def test_eval_log_matches_exact_eval(self, expr, n):
        v = eval_at(expr, n)
        lv = eval_log(expr, n)
        if v == 0:
            assert lv == -math.inf
        else:
            # big-integer logs avoid float underflow of tiny exact values
            ref = math.log(v.numerator) - math.log(v.denominator)
            assert math.isclose(lv, ref, rel_tol=1e-9, abs_tol=1e-9)


class TestValidate:
    def test_valid_power(self):
        assert validate(Pow(1)).holds

    def test_exp_ratio_out_of_range(self):
        v = validate(Exp(2))
        assert v.fails
        assert "(0, 1)" in v.evidence["violation"]

    def test_increasing_prefix_rejected(self):
        v = validate(Explicit((F(1, 2), F(1)), Pow(1)))
        assert v.fails
        assert "prefix" in v.evidence["location"]

    def test_powlog_needs_decay(self):
        assert validate(PowLog(0, 0)).fails
        assert validate(PowLog(0, -1)).fails
        assert validate(PowLog(1, -1)).holds

    def test_prefix_ending_in_zero_rejected(self):
        assert validate(Explicit((F(1), F(0)), Pow(1))).fails

    def test_explicit_constructor_normalizes_zero_prefix(self):
        assert explicit([1, 0], Pow(1)) == FiniteSupport([1, 0])
        assert explicit([], Pow(1)) == Pow(1)

    def test_nested_violation_located(self):
        v = validate(Product(Pow(1), Exp(3)))
        assert v.fails
        assert v.evidence["location"] == "seq.right"

    @given(expr=full_expr)
    def test_battery_validates(self, expr):
        assert validate(expr).holds


class TestSignature:
    def test_power_signature(self):
        sig = signature_of(Pow(2))
        assert (sig.rate, sig.pow, sig.logpow) == (root_rational(1), F(2), F(0))

    def test_ampliation_takes_rate_root(self):
        sig = signature_of(Ampliation(3, Exp(F(1, 8))))
        assert sig.rate.base == F(1, 8) and sig.rate.index == 3
        # same rate value as the cube root taken exactly
        assert sig.rate == root_rational(F(1, 2), 1)
        assert sig == signature_of(Exp(F(1, 2)))

    def test_product_adds_powers(self):
        sig = signature_of(Product(Pow(1), Pow(1)))
        assert (sig.rate, sig.pow) == (root_rational(1), F(2))

    def test_subsample_powers_rate(self):
        assert signature_of(subsample(3, Pow(1))) == signature_of(Pow(1))
        assert signature_of(subsample(2, Exp(F(1, 2)))) == signature_of(Exp(F(1, 4)))

    def test_finite_support_is_zero_tail(self):
        assert signature_of(FiniteSupport([1])).is_zero_tail
        assert signature_of(Product(Pow(1), FiniteSupport([1]))).is_zero_tail

    @given(expr=battery_expr)
    def test_scale_and_prefix_leave_signature(self, expr):
        assert signature_of(Scale(7, expr)) == signature_of(expr)
        assert signature_of(Explicit((F(10), F(9)), expr)) == signature_of(expr)

    @given(a=battery_expr, b=battery_expr)
    def test_product_homomorphism(self, a, b):
        sa, sb, sp = signature_of(a), signature_of(b), signature_of(Product(a, b))
        assert sp.pow == sa.pow + sb.pow
        assert sp.logpow == sa.logpow + sb.logpow


class TestAmpliate:
    def test_identity(self):
        assert ampliate(1, Pow(1)) is Pow(1) or ampliate(1, Pow(1)) == Pow(1)

    def test_fusion(self):
        assert ampliate(2, ampliate(3, Exp(F(1, 2)))) == Ampliation(6, Exp(F(1, 2)))
        assert eval_at(ampliate(2, ampliate(3, Exp(F(1, 2)))), 6) == F(1, 2)
        assert eval_at(ampliate(6, Exp(F(1, 2))), 6) == F(1, 2)

    @given(expr=st.sampled_from(EXACT_BATTERY), m=st.integers(1, 4), k=st.integers(1, 4), n=st.integers(1, 512))
    def test_fusion_pointwise(self, expr, m, k, n):
        assert eval_at(ampliate(m, ampliate(k, expr)), n) == eval_at(
            ampliate(m * k, expr), n
        )

    @given(expr=st.sampled_from(EXACT_BATTERY), n=st.integers(1, 512))
    def test_ampliation_pointwise_order(self, expr, n):
        values = [eval_at(Ampliation(m, expr), n) for m in range(1, 9)]
        assert all(a <= b for a, b in zip(values, values[1:]))

    @given(a=st.sampled_from(EXACT_BATTERY), b=st.sampled_from(EXACT_BATTERY),
           m=st.integers(1, 6), n=st.integers(1, 512))
    def test_product_ampliation_compatibility(self, a, b, m, n):
        lhs = eval_at(Ampliation(m, Product(a, b)), n)
        rhs = eval_at(Ampliation(m, a), n) * eval_at(Ampliation(m, b), n)
        assert lhs == rhs


class TestMonotonicity:
    @given(expr=full_expr, n=index)
    @settings(max_examples=300)
    def test_nonincreasing(self, expr, n):
        a, b = eval_at(expr, n), eval_at(expr, n + 1)
        if isinstance(a, F) and isinstance(b, F):
            assert a >= b >= 0
        else:
            assert float(a) >= float(b) * (1 - 1e-12)
            assert float(b) >= 0

    @given(expr=battery_expr)
    def test_tends_to_zero_on_dyadic_grid(self, expr):
        # eventually strictly decreasing along dyadic samples, with a real drop
        values = [eval_log(expr, 2 ** k) for k in range(1, 21)]
        tail = values[4:]
        assert all(b < a for a, b in zip(tail, tail[1:]))
        assert values[-1] < values[0] - 0.5


class TestCompare:
    def test_exponential_beats_any_power(self):
        assert compare(Exp(F(1, 2)), Pow(5), Mode.LITTLE_O).holds

    def test_ampliation_ratio_does_not_vanish(self):
        v = compare(Pow(1), Ampliation(2, Pow(1)), Mode.LITTLE_O)
        assert v.fails and v.proven
        assert v.evidence["limiting_ratio"] == F(1, 2)

    def test_constant_scaling_is_big_o(self):
        assert compare(Scale(7, Pow(2)), Pow(2), Mode.BIG_O).holds

    def test_division_by_zero_tail(self):
        v = compare(Pow(1), FiniteSupport([1, 1]), Mode.BIG_O)
        assert v.fails
        assert v.evidence["reason"] == "division by zero tail"
        v = compare(FiniteSupport([1, 1, 1]), FiniteSupport([1]), Mode.BIG_O)
        assert v.fails

    def test_zero_tail_support_comparison(self):
        assert compare(FiniteSupport([1]), FiniteSupport([1, 1]), Mode.LITTLE_O).holds
        assert compare(FiniteSupport([1, 1]), FiniteSupport([1]), Mode.LITTLE_O).fails
        assert compare(FiniteSupport([1]), Pow(1), Mode.LITTLE_O).holds
        assert compare(Pow(1), FiniteSupport([1]), Mode.LITTLE_O).fails

    @given(expr=battery_expr)
    def test_reflexive_big_o(self, expr):
        assert compare(expr, expr, Mode.BIG_O).holds
        assert compare(expr, expr, Mode.LITTLE_O).fails

    @given(a=battery_expr, b=battery_expr)
    def test_little_o_implies_big_o(self, a, b):
        if compare(a, b, Mode.LITTLE_O).holds:
            assert compare(a, b, Mode.BIG_O).holds

    @given(a=battery_expr, b=battery_expr, c=battery_expr)
    @settings(max_examples=200)
    def test_big_o_transitive(self, a, b, c):
        if compare(a, b, Mode.BIG_O).holds and compare(b, c, Mode.BIG_O).holds:
            assert compare(a, c, Mode.BIG_O).holds


class TestDelta2:
    @pytest.mark.parametrize("p", [1, 2, 3])
    def test_powers_hold_with_exact_ratio(self, p):
        v = delta2_check(Pow(p))
        assert v.holds and v.proven
        assert v.evidence["limiting_ratio"] == F(2) ** p

    @pytest.mark.parametrize("r", [F(1, 2), F(9, 10)])
    def test_exponentials_fail(self, r):
        v = delta2_check(Exp(r))
        assert v.fails and v.proven

    def test_log_correction_tends_to_one(self):
        v = delta2_check(PowLog(1, 1))
        assert v.holds
        assert v.evidence["limiting_ratio"] == F(2)
        # dyadic ratio approaches 2 from above (log correction > 1, shrinking)
        n = 2 ** 18
        ratio = math.exp(eval_log(PowLog(1, 1), n) - eval_log(PowLog(1, 1), 2 * n))
        assert 2.0 < ratio < 2.2

    def test_finite_support_is_an_error(self):
        with pytest.raises(InvalidSequenceError):
            delta2_check(FiniteSupport([1]))

    @given(expr=battery_expr)
    def test_dyadic_ratio_oracle(self, expr):
        """Brute-force dyadic sampling (in log space) agrees with the verdict."""
        v = delta2_check(expr)
        log_ratio = eval_log(expr, 2 ** 19) - eval_log(expr, 2 ** 20)
        if v.holds:
            assert log_ratio < math.log(1e6)
        else:
            assert log_ratio > math.log(1e3)


class TestNumericProbe:
    def test_exponential_over_power_indicated(self):
        v = numeric_probe(Exp(F(1, 2)), Pow(1), Mode.LITTLE_O, 2 ** 20, 1e-3)
        assert v.holds
        assert v.method is Method.NUMERIC

    def test_constant_ratio_fails(self):
        v = numeric_probe(Pow(1), Pow(1), Mode.LITTLE_O, 2 ** 20, 1e-3)
        assert v.fails

    def test_ampliation_big_o_sup_stabilizes(self):
        v = numeric_probe(Pow(1), Ampliation(3, Pow(1)), Mode.BIG_O, 2 ** 20, 1e-3)
        assert v.holds
        assert abs(v.evidence["sup_ratio"] - 1.0) < 1e-9

    def test_never_symbolic(self):
        v = numeric_probe(Pow(1), Pow(2), Mode.BIG_O)
        assert v.method is Method.NUMERIC

    def test_nmax_floor_enforced(self):
        with pytest.raises(ValueError):
            numeric_probe(Pow(1), Pow(1), Mode.BIG_O, n_max=512)

    def test_overflow_shrinks_grid(self):
        v = numeric_probe(Pow(1), Exp(F(1, 2)), Mode.BIG_O, 2 ** 20, 1e-3)
        assert v.evidence["notes"]
        assert v.status in (Status.FAILS, Status.UNKNOWN)


class TestSignatureSoundness:
    """Symbolic verdicts corroborated numerically over the whole battery."""

    def _pairs(self):
        return [(a, b) for a in BATTERY for b in BATTERY]

    def test_little_o_holds_never_probed_as_fails(self):
        for a, b in self._pairs():
            v = compare(a, b, Mode.LITTLE_O)
            if v.holds and v.proven:
                probe = numeric_probe(a, b, Mode.LITTLE_O, 2 ** 20, 1e-2)
                assert not probe.fails, (a, b, probe.evidence)

    def test_limiting_ratio_within_ten_percent(self):
        checked = 0
        for a, b in self._pairs():
            v = compare(a, b, Mode.LITTLE_O)
            if v.fails and v.proven and "limiting_ratio" in v.evidence:
                c = float(v.evidence["limiting_ratio"])
                sampled = math.exp(eval_log(a, 2 ** 20) - eval_log(b, 2 ** 20))
                assert abs(sampled - c) <= 0.1 * c, (a, b, c, sampled)
                checked += 1
        assert checked >= 10

    def test_same_signature_ratio_bounded(self):
        interval = (1e-9, 1e9)
        checked = 0
        for a, b in self._pairs():
            if a is b:
                continue
            if signature_of(a) == signature_of(b):
                for k in range(10, 21):
                    r = math.exp(eval_log(a, 2 ** k) - eval_log(b, 2 ** k))
                    assert interval[0] < r < interval[1], (a, b, k, r)
                checked += 1
        assert checked >= 6
