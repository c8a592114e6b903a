import math

import numpy as np
import pytest

from remezkit.oracle import (
    IntervalUnion,
    PointwiseMaximizer,
    Polynomial,
    best_approx_upper,
    covering_number_intervals,
    lp_max_at_point,
    max_abs_on_grid,
    multi_indices,
    poly_derivative_norm,
    remez_constant_exact,
    sublevel_intervals,
)
from remezkit.set_models import FinitePoints


class TestLpMaxAtPoint:
    def test_affine_between_endpoints(self):
        z = FinitePoints.from_1d([-1.0, 1.0])
        assert lp_max_at_point(z, 1, 0.0) == pytest.approx(1.0, abs=1e-12)

    def test_hand_derived_five(self):
        z = FinitePoints.from_1d([0.0, 0.5])
        assert lp_max_at_point(z, 1, -1.0) == pytest.approx(5.0, abs=1e-12)

    def test_unbounded_zero_set(self):
        z = FinitePoints.from_1d([-1.0, 1.0])
        assert math.isinf(lp_max_at_point(z, 2, 0.0))

    def test_unbounded_certificate_vanishes_on_z(self):
        z = FinitePoints.from_1d([-1.0, 1.0])
        maximizer = PointwiseMaximizer(z, 2)
        assert math.isinf(maximizer.value_at(0.0))
        ray = maximizer.last_ray
        assert ray is not None
        vals = np.polynomial.polynomial.polyval(z.values_1d(), ray)
        assert np.abs(vals).max() <= 1e-9
        at_x = float(np.polynomial.polynomial.polyval(0.0, ray))
        assert abs(at_x) > 1e-9

    def test_determinism_bit_identical(self):
        z = FinitePoints.from_1d([-0.9, -0.2, 0.3, 0.8])
        values = {lp_max_at_point(z, 2, 0.55) for _ in range(5)}
        assert len(values) == 1

    def test_scaling_covariance(self):
        z = FinitePoints.from_1d([-0.7, 0.1, 0.4])
        base = lp_max_at_point(z, 2, 0.9)
        for level in (0.5, 2.0):
            assert lp_max_at_point(z, 2, 0.9, level=level) == pytest.approx(
                level * base, rel=1e-12
            )


class TestRemezConstantExact:
    def test_grid_with_endpoints_is_one(self):
        r = remez_constant_exact(FinitePoints.from_1d([-1.0, 0.0, 1.0]), 1, 2001)
        assert r.value == pytest.approx(1.0, abs=1e-12)

    def test_hand_derived_case(self):
        r = remez_constant_exact(FinitePoints.from_1d([0.0, 0.5]), 1, 2001)
        assert r.value == pytest.approx(5.0, abs=1e-6)

    def test_zero_set_infinite(self):
        r = remez_constant_exact(FinitePoints.from_1d([-1.0, 1.0]), 2, 101)
        assert r.is_infinite

    def test_monotone_in_z(self):
        rng = np.random.default_rng(31)
        for _ in range(5):
            pts = np.sort(rng.uniform(-1, 1, size=6))
            extra = np.sort(np.append(pts, rng.uniform(-1, 1)))
            r_small = remez_constant_exact(FinitePoints.from_1d(pts), 2, 201)
            r_large = remez_constant_exact(FinitePoints.from_1d(extra), 2, 201)
            assert r_large.value <= r_small.value * (1 + 1e-9)

    def test_rank_deficiency_iff_infinite(self):
        rng = np.random.default_rng(37)
        for d in (1, 2, 3):
            few = np.sort(rng.uniform(-1, 1, size=d))  # |Z| = d: some poly vanishes
            enough = np.sort(rng.uniform(-1, 1, size=d + 1))
            vand_few = np.vander(few, d + 1)
            vand_enough = np.vander(enough, d + 1)
            assert np.linalg.matrix_rank(vand_few) < d + 1
            assert np.linalg.matrix_rank(vand_enough) == d + 1
            assert remez_constant_exact(FinitePoints.from_1d(few), d, 101).is_infinite
            assert not remez_constant_exact(FinitePoints.from_1d(enough), d, 101).is_infinite

    def test_planar_collinear(self):
        line = FinitePoints(np.array([[-0.5, -0.5], [0.0, 0.0], [0.5, 0.5]]))
        assert remez_constant_exact(line, 1, 41).is_infinite
        triangle = FinitePoints(np.array([[-0.5, -0.3], [0.4, -0.1], [0.0, 0.6]]))
        r = remez_constant_exact(triangle, 1, 41)
        assert not r.is_infinite and r.value >= 1.0


class TestSublevelIntervals:
    def test_identity_poly(self):
        v = sublevel_intervals(Polynomial.univariate([0.0, 1.0]), 0.5)
        assert v.to_list() == [[-0.5, 0.5]]

    def test_chebyshev_full_interval(self):
        v = sublevel_intervals(Polynomial.univariate([-1.0, 0.0, 2.0]), 1.0)
        assert v.to_list() == [[-1.0, 1.0]]

    def test_two_components(self):
        v = sublevel_intervals(Polynomial.univariate([-1.0, 0.0, 2.0]), 0.5)
        want = [[-math.sqrt(0.75), -0.5], [0.5, math.sqrt(0.75)]]
        assert len(v.intervals) == 2
        for got, expect in zip(v.to_list(), want):
            assert got[0] == pytest.approx(expect[0], abs=1e-12)
            assert got[1] == pytest.approx(expect[1], abs=1e-12)

    def test_constant_cases(self):
        assert sublevel_intervals(Polynomial.univariate([0.3]), 0.5).to_list() == [[-1.0, 1.0]]
        assert sublevel_intervals(Polynomial.univariate([0.9]), 0.5).to_list() == []

    def test_membership_random(self):
        rng = np.random.default_rng(41)
        for _ in range(20):
            deg = int(rng.integers(1, 9))
            p = Polynomial.univariate(rng.uniform(-1, 1, size=deg + 1))
            rho = float(10.0 ** rng.uniform(-2, 0))
            v = sublevel_intervals(p, rho)
            xs = rng.uniform(-1, 1, size=200)
            inside = np.zeros(xs.shape, dtype=bool)
            for a, b in v.intervals:
                inside |= (xs >= a) & (xs <= b)
            vals = np.abs(p.evaluate(xs))
            # Points comfortably inside/outside must classify correctly.
            assert np.all(inside[vals <= rho * (1 - 1e-9) - 1e-12])
            assert not np.any(inside[vals >= rho * (1 + 1e-9) + 1e-12])


class TestCoveringIntervals:
    def test_single_component(self):
        assert covering_number_intervals(IntervalUnion(((0.0, 1.0),)), 0.3) == 4

    def test_two_far_components(self):
        v = IntervalUnion(((-1.0, -0.8), (0.2, 0.4)))
        assert covering_number_intervals(v, 0.25) == 2

    def test_sublevel_derived_case(self):
        v = sublevel_intervals(Polynomial.univariate([-1.0, 0.0, 2.0]), 0.5)
        assert covering_number_intervals(v, 0.2) == 4

    def test_empty(self):
        assert covering_number_intervals(IntervalUnion(()), 0.5) == 0

    def test_interval_spanning_gap(self):
        v = IntervalUnion(((0.0, 0.1), (0.15, 0.3)))
        assert covering_number_intervals(v, 0.2) == 2

    def test_vitushkin_random(self):
        rng = np.random.default_rng(43)
        for _ in range(50):
            deg = int(rng.integers(1, 9))
            coeffs = rng.uniform(-1, 1, size=deg + 1)
            if coeffs[-1] == 0.0:
                coeffs[-1] = 0.5
            p = Polynomial.univariate(coeffs)
            rho = float(10.0 ** rng.uniform(-3, 0))
            eps = float(10.0 ** rng.uniform(-2, 0))
            v = sublevel_intervals(p, rho)
            assert covering_number_intervals(v, eps) <= deg + v.total_length / eps + 1e-9


class TestMaxAbsOnGrid:
    def test_zero(self):
        assert max_abs_on_grid(lambda x: 0.0 * x, 1, 100) == 0.0

    def test_endpoint(self):
        assert max_abs_on_grid(lambda x: x, 1, 100) == 1.0

    def test_sine(self):
        assert max_abs_on_grid(lambda x: np.sin(5 * x), 1, 10_000) == pytest.approx(1.0, abs=1e-6)

    def test_planar(self):
        val = max_abs_on_grid(lambda p: p[:, 0] + p[:, 1], 2, 201)
        assert val == pytest.approx(math.sqrt(2.0), abs=1e-2)


class TestPolyDerivativeNorm:
    def test_constant_second_derivative(self):
        assert poly_derivative_norm(Polynomial.univariate([0.0, 0.0, 1.0]), 2) == 2.0

    def test_cubic_gradient(self):
        assert poly_derivative_norm(Polynomial.univariate([0.0, -1.0, 0.0, 1.0]), 1) == pytest.approx(2.0, abs=1e-12)

    def test_leading_coefficient_factorial(self):
        c = -2.25
        coeffs = np.polynomial.polynomial.polyfromroots([-1.0, 0.0, 1.0]) * c
        assert poly_derivative_norm(Polynomial.univariate(coeffs), 3) == pytest.approx(
            6.0 * abs(c), rel=1e-13
        )

    def test_order_above_degree(self):
        assert poly_derivative_norm(Polynomial.univariate([1.0, 1.0]), 5) == 0.0


class TestBestApproxUpper:
    def test_polynomial_recovered(self):
        f = lambda x: 1.0 + 2.0 * x - 0.5 * x**3
        assert best_approx_upper(f, 5) <= 1e-10

    def test_absolute_value_upper_contract(self):
        # The degree-0 interpolant sits at the node value ~0, so the grid
        # error is ~1: a valid upper bound on E_0 = 0.5, not the optimum.
        val = best_approx_upper(abs, 0)
        assert val == pytest.approx(1.0, abs=1e-9)
        assert val >= 0.5

    def test_sine_decay_with_alternation_floor(self):
        f = lambda x: np.sin(5.0 * x)
        val = best_approx_upper(f, 9)
        assert val <= 1e-2
        # de la Vallee Poussin: alternating error signs at d+2 points give a
        # certified lower bound on E_9 that the upper estimate must dominate.
        d = 9
        k = np.arange(d + 1)
        nodes = np.cos((2.0 * k + 1.0) * math.pi / (2.0 * (d + 1)))
        coeffs = np.polynomial.chebyshev.chebfit(nodes, np.sin(5.0 * nodes), d)
        xs = np.linspace(-1.0, 1.0, 20_001)
        err = np.sin(5.0 * xs) - np.polynomial.chebyshev.chebval(xs, coeffs)
        sign_changes = np.nonzero(np.diff(np.sign(err)))[0]
        segments = np.split(np.arange(xs.size), sign_changes + 1)
        extrema = [seg[np.argmax(np.abs(err[seg]))] for seg in segments if seg.size]
        assert len(extrema) >= d + 2
        dlvp = min(abs(err[i]) for i in extrema[: d + 2])
        assert dlvp > 0
        assert val >= dlvp

    def test_nonincreasing_in_degree(self):
        f = lambda x: np.exp(x)
        values = [best_approx_upper(f, d) for d in range(0, 8)]
        assert all(a >= b - 1e-12 for a, b in zip(values, values[1:]))


class TestBasisInvariance:
    def test_chebyshev_basis_matches_monomials(self, monkeypatch):
        # The optimum is basis independent; force the Chebyshev basis at a
        # degree that normally uses monomials and compare.
        import remezkit.oracle as oracle_mod

        z = FinitePoints.from_1d([-0.8, -0.3, 0.1, 0.45, 0.9])
        baseline = [lp_max_at_point(z, 3, x) for x in (-1.0, -0.15, 0.7, 1.0)]
        monkeypatch.setattr(oracle_mod, "_CHEB_BASIS_MIN_DEGREE", 0)
        switched = [lp_max_at_point(z, 3, x) for x in (-1.0, -0.15, 0.7, 1.0)]
        for a, b in zip(baseline, switched):
            assert a == pytest.approx(b, rel=1e-9)

    def test_high_degree_uses_chebyshev_basis(self):
        z = FinitePoints.from_1d([-1.0 + 0.2 * i for i in range(11)])
        value = lp_max_at_point(z, 9, 0.95)
        assert 1.0 <= value < 1e6


class TestLpDiagnostics:
    def test_pivot_limit_carries_basis(self, monkeypatch):
        import remezkit._simplex as simplex
        from remezkit.errors import LpFailureError

        monkeypatch.setattr(simplex, "_MAX_PIVOTS", 0)
        z = FinitePoints.from_1d([0.0, 0.5])
        with pytest.raises(LpFailureError) as info:
            lp_max_at_point(z, 1, -1.0)
        assert isinstance(info.value.basis, list) and info.value.basis


class TestPolynomialType:
    def test_multi_index_count(self):
        assert len(multi_indices(2, 3)) == 10  # C(2+3, 3)

    def test_serialization_roundtrip(self):
        p = Polynomial(2, 2, np.array([1.0, 0.0, -2.0, 0.5, 0.0, 3.0]))
        q = Polynomial.from_dict(p.to_dict())
        assert q.n == p.n and q.d == p.d
        assert np.array_equal(q.coeffs, p.coeffs)

    def test_bivariate_evaluation(self):
        # graded-lex for n=2, d=2: 1, x, y, x^2, xy, y^2
        p = Polynomial(2, 2, np.array([1.0, 0.0, 0.0, 0.0, 0.0, 2.0]))
        val = p.evaluate(np.array([[0.5, 0.5]]))
        assert val[0] == pytest.approx(1.0 + 2.0 * 0.25)
