import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from remezkit.errors import InputError
from remezkit.remez_bounds import RemezConstant
from remezkit.smooth_bounds import (
    SmoothFnSpec,
    curve_smooth_bound,
    fixed_degree_bound,
    general_bound,
    select_d0,
    smooth_remez,
    taylor_remainder,
    taylor_remez,
    whitney_lower,
)


def _rc(value, d=0, n=1):
    return RemezConstant(value, "closed-form", d, n)


class TestSmoothFnSpec:
    def test_uniform_must_dominate(self):
        with pytest.raises(InputError):
            SmoothFnSpec(1, (1.0, 5.0), uniform_M=2.0)

    def test_length_checked(self):
        with pytest.raises(InputError):
            SmoothFnSpec(2, (1.0, 2.0))


class TestTaylorRemainder:
    def test_factorial_plug_in(self):
        spec = SmoothFnSpec(4, (0.0, 1.0, 1.0, 1.0, 24.0))
        assert taylor_remainder(spec, 3) == 1.0

    def test_order_zero(self):
        spec = SmoothFnSpec(1, (0.0, 5.0))
        assert taylor_remainder(spec, 0) == 5.0

    def test_missing_bound(self):
        spec = SmoothFnSpec(2, (1.0, 1.0, 1.0))
        with pytest.raises(InputError):
            taylor_remainder(spec, 2)


class TestSmoothRemez:
    def test_exact_recovery(self):
        rep = smooth_remez(1.0, [(_rc(1.0), 0.0)])
        assert rep.bound == 1.0 and rep.chosen_degree == 0

    def test_single_term(self):
        assert smooth_remez(1.0, [(_rc(2.0), 0.5)]).bound == 3.5

    def test_two_term_minimum(self):
        rep = smooth_remez(0.1, [(_rc(2.0, d=0), 1.0), (_rc(16.0, d=1), 0.01)])
        assert rep.bound == pytest.approx(1.77, abs=1e-12)
        assert rep.chosen_degree == 1

    def test_all_infinite(self):
        rep = smooth_remez(1.0, [(RemezConstant.infinite("closed-form", 0, 1), 0.5)])
        assert rep.is_infinite

    def test_lowest_degree_wins_ties(self):
        rep = smooth_remez(1.0, [(_rc(2.0, d=3), 0.0), (_rc(2.0, d=1), 0.0)])
        assert rep.chosen_degree == 1

    def test_monotone_in_inputs(self):
        base = smooth_remez(0.5, [(_rc(3.0, d=1), 0.2)]).bound
        assert smooth_remez(0.5, [(_rc(2.5, d=1), 0.2)]).bound <= base
        assert smooth_remez(0.5, [(_rc(3.0, d=1), 0.1)]).bound <= base

    def test_bound_at_least_l(self):
        rng = np.random.default_rng(23)
        for _ in range(50):
            big_l = float(rng.uniform(0, 3))
            entries = [
                (_rc(float(rng.uniform(1, 9)), d=d), float(rng.uniform(0, 2))) for d in range(4)
            ]
            assert smooth_remez(big_l, entries).bound >= big_l


class TestTaylorRemez:
    def test_zero_function(self):
        spec = SmoothFnSpec(1, (0.0, 0.0))
        rep = taylor_remez(spec, 0.0, lambda d: _rc(1.0, d=d))
        assert rep.bound == 0.0

    def test_two_degree_minimum(self):
        spec = SmoothFnSpec(2, (1.0, 5.0, 2.0))
        table = {0: _rc(1.0, d=0), 1: _rc(3.0, d=1)}
        rep = taylor_remez(spec, 0.0, lambda d: table[d])
        assert rep.bound == 4.0 and rep.chosen_degree == 1

    def test_all_infinite(self):
        spec = SmoothFnSpec(2, (1.0, 5.0, 2.0))
        rep = taylor_remez(spec, 1.0, lambda d: RemezConstant.infinite("closed-form", d, 1))
        assert rep.is_infinite


class TestFixedDegree:
    def test_plug_in(self):
        assert fixed_degree_bound(_rc(1.0, d=1), 0.0, 2.0, 1).bound == 2.0

    def test_obstruction(self):
        rep = fixed_degree_bound(RemezConstant.infinite("lp-exact-lower", 1, 1), 1.0, 2.0, 1)
        assert rep.is_infinite and rep.rule == "fixed-degree-obstruction"

    def test_zero_remainder(self):
        assert fixed_degree_bound(_rc(5.0, d=2), 1.0, 0.0, 2).bound == 5.0


class TestCurveSmoothBound:
    def test_plug_in_33(self):
        assert curve_smooth_bound(48.0, 1.0 / 48.0, 1, 0.0, 2.0).bound == 33.0

    def test_zero_remainder_32(self):
        assert curve_smooth_bound(48.0, 1.0 / 48.0, 1, 1.0, 0.0).bound == 32.0

    def test_degree_too_large(self):
        with pytest.raises(InputError):
            curve_smooth_bound(24.0, 1.0 / 24.0, 1, 0.0, 1.0)


class TestSelectD0:
    def test_large_l(self):
        assert select_d0(3.0, 1.0, 5) == 0

    def test_small_l(self):
        assert select_d0(1.0, 12.0, 3) == 2

    def test_middle_rule(self):
        assert select_d0(1.0, 6.0, 4) == 2

    def test_k_one(self):
        assert select_d0(0.5, 1.0, 1) == 0

    @given(
        big_m=st.floats(min_value=1e-3, max_value=1e3),
        k=st.integers(min_value=1, max_value=12),
        t=st.floats(min_value=0.0, max_value=1.0),
    )
    @settings(max_examples=300, deadline=None)
    def test_case_partition(self, big_m, k, t):
        lo = big_m / (math.factorial(k) * 10.0)
        big_l = lo * (10.0 * big_m / lo) ** t  # log-spaced over [M/(k! 10), 10M]
        d0 = select_d0(big_l, big_m, k)
        if big_l > big_m:
            assert d0 == 0
        elif big_l <= big_m / math.factorial(k):
            assert d0 == k - 1
        else:
            assert 1 <= d0 <= k - 1
            assert big_m / math.factorial(d0 + 1) <= big_l <= big_m / math.factorial(d0)


class TestGeneralBound:
    def test_direct_form(self):
        rep = general_bound(2.0, 3.0, 1.0, 5)
        assert rep.bound == 5.0 and rep.chosen_degree == 0

    def test_top_degree_form(self):
        assert general_bound(2.0, 1.0, 12.0, 3).bound == 10.0

    def test_middle_form(self):
        assert general_bound(2.0, 1.0, 6.0, 4).bound == 9.0

    def test_at_least_l(self):
        rng = np.random.default_rng(29)
        for _ in range(100):
            q = float(rng.uniform(0.5, 10))
            big_l = float(rng.uniform(0, 5))
            big_m = float(rng.uniform(1e-2, 5))
            k = int(rng.integers(1, 9))
            assert general_bound(q, big_l, big_m, k).bound >= big_l

    def test_pure_remainder_at_zero_l(self):
        for k in (1, 2, 5):
            for big_m in (0.5, 2.0):
                rep = general_bound(3.0, 0.0, big_m, k)
                assert rep.bound == big_m / math.factorial(rep.chosen_degree + 1)

    def test_huge_smoothness_order(self):
        # Factorials beyond float64 range must not crash selection: M/400!
        # underflows below any positive L, so the middle rule fires.
        rep = general_bound(2.0, 1e-300, 1.0, 400)
        assert 1 <= rep.chosen_degree <= 399
        assert math.factorial(rep.chosen_degree + 1) * 1e-300 >= 1.0 * (1 - 1e-12)
        assert rep.bound >= 0.0
        assert general_bound(2.0, 0.0, 1.0, 400).chosen_degree == 399

    def test_log10_reported_on_overflow(self):
        rep = general_bound(1e200, 0.2, 1.0, 4)
        assert rep.chosen_degree == 2
        assert math.isinf(rep.bound) and not rep.is_infinite
        # 2 * q^2 * L: log10 = log10(2) + 2*200 + log10(0.2)
        assert rep.log10_bound == pytest.approx(math.log10(2.0) + 400 + math.log10(0.2), abs=1e-9)
        assert rep.to_dict()["log10_bound"] == rep.log10_bound


class TestWhitneyLower:
    def test_plug_ins(self):
        assert whitney_lower(_rc(3.0, d=1), 1) == 0.5
        assert whitney_lower(_rc(1.0, d=0), 0) == 0.5

    def test_infinite_vacuous(self):
        assert whitney_lower(RemezConstant.infinite("closed-form", 1, 1), 1) == 0.0
