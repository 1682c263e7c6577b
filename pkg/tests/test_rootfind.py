import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lorcat.rootfind import (
    Bracket,
    EvaluationError,
    Multiplicity,
    ScanConfig,
    bisect,
    count_roots,
    count_roots_on_segments,
    periodic_extrema,
    scan_brackets,
    solve_monotone,
    solve_monotone_interval,
    solve_tangency,
)


def dense_sign_scan(f, lo, hi, n=1_000_001):
    xs = np.linspace(lo, hi, n)
    vals = f(xs)
    sign = np.sign(vals)
    return int(np.sum(sign[:-1] * sign[1:] < 0))


class TestScanBrackets:
    def test_quadratic_single_bracket(self):
        brackets = scan_brackets(lambda x: x * x - 1.0, 0.0, 2.0, 9)
        assert len(brackets) == 1
        assert brackets[0].lo <= 1.0 <= brackets[0].hi

    def test_transcendental_matches_dense_oracle(self):
        f = lambda x: np.cos(2 * x) - x
        assert dense_sign_scan(f, 0.0, 1.0) == 1
        assert len(scan_brackets(f, 0.0, 1.0, 64)) == 1

    def test_positive_function_yields_nothing(self):
        assert scan_brackets(lambda x: 1.0 + x * x, -1.0, 1.0, 33) == []

    def test_nan_reported_with_abscissa(self):
        with pytest.raises(EvaluationError):
            scan_brackets(lambda x: float("nan"), 0.0, 1.0, 5)


class TestBisect:
    def test_linear(self):
        b = Bracket(0.0, 1.0, -0.5, 0.5)
        assert bisect(lambda x: x - 0.5, b).x == pytest.approx(0.5, abs=1e-12)

    def test_monotone_transcendental(self):
        f = lambda a: math.sinh(a) / a - 2.0
        root = bisect(lambda a: f(a), Bracket(0.1, 10.0, f(0.1), f(10.0)), tol=1e-14)
        assert root.x == pytest.approx(2.1773189849653067, abs=1e-10)
        assert abs(root.residual) < 1e-12

    def test_cubic_flat_root(self):
        f = lambda x: x**3
        root = bisect(f, Bracket(-1.0, 2.0, -1.0, 8.0), tol=1e-12)
        assert abs(root.x) < 1e-11

    def test_newton_polish(self):
        f = lambda x: math.cos(2 * x) - x
        df = lambda x: -2 * math.sin(2 * x) - 1.0
        root = bisect(f, Bracket(0.0, 1.0, f(0.0), f(1.0)), tol=1e-15, fprime=df)
        assert abs(f(root.x)) < 1e-14

    def test_root_stays_inside_bracket(self):
        f = lambda x: math.tanh(3 * (x - 0.7))
        root = bisect(f, Bracket(0.0, 2.0, f(0.0), f(2.0)))
        assert root.bracket[0] <= root.x <= root.bracket[1]


class TestSolveMonotone:
    def test_existing_target(self):
        res = solve_monotone(lambda a: math.sinh(a) / a, 2.0, 1.0)
        assert res is not None
        assert res.x == pytest.approx(2.1773189849653067, abs=1e-10)

    def test_excluded_target(self):
        assert solve_monotone(lambda a: math.sinh(a) / a, 0.5, 1.0) is None

    def test_identity(self):
        res = solve_monotone(lambda a: a, 7.0, 1.0)
        assert res.x == pytest.approx(7.0, abs=1e-12)

    def test_decreasing_function(self):
        res = solve_monotone(lambda a: 1.0 / a, 0.25, 1.0)
        assert res.x == pytest.approx(4.0, abs=1e-12)


class TestCountRoots:
    def test_single_root_regime(self):
        f = lambda a: np.cos(6.0 * a) - a
        df = lambda a: -6.0 * np.sin(6.0 * a) - 1.0
        roots = count_roots(f, df, 1e-9, 1.1)
        assert len(roots) == 1
        assert dense_sign_scan(f, 1e-9, 1.1) == 1

    def test_three_root_regime(self):
        f = lambda a: np.cos(6.5 * a) - a
        df = lambda a: -6.5 * np.sin(6.5 * a) - 1.0
        roots = count_roots(f, df, 1e-9, 1.1)
        assert len(roots) == 3
        assert dense_sign_scan(f, 1e-9, 1.1) == 3

    def test_double_root_is_tangential(self):
        roots = count_roots(lambda x: x * x, lambda x: 2 * x, -1.0, 1.0)
        assert len(roots) == 1
        assert roots[0].multiplicity is Multiplicity.TANGENTIAL
        assert abs(roots[0].x) < 1e-9

    def test_near_tangent_pair_merges(self):
        eps = 1e-13  # roots 2 sqrt(eps) < 1e-6 apart, extremum depth < 1e-9
        f = lambda x: (x - 0.5) ** 2 - eps
        df = lambda x: 2 * (x - 0.5)
        roots = count_roots(f, df, 0.0, 1.0)
        assert len(roots) == 1
        assert roots[0].multiplicity is Multiplicity.TANGENTIAL

    def test_determinism(self):
        f = lambda a: np.cos(9.0 * a) - a
        df = lambda a: -9.0 * np.sin(9.0 * a) - 1.0
        first = count_roots(f, df, 1e-9, 1.0)
        second = count_roots(f, df, 1e-9, 1.0)
        assert [(r.x, r.residual) for r in first] == [(r.x, r.residual) for r in second]

    def test_roots_inside_brackets(self):
        f = lambda a: np.cos(14.0 * a) - a
        df = lambda a: -14.0 * np.sin(14.0 * a) - 1.0
        for r in count_roots(f, df, 1e-9, 1.0):
            assert r.bracket[0] <= r.x <= r.bracket[1]


class TestSegmentCounting:
    def test_matches_scan_counting(self):
        h = 11.3
        f = lambda a: math.cos(a * h) - a
        sched = periodic_extrema(h, "cos_family", k_max=6)
        crits = sorted(x for x in (*sched.minima, *sched.maxima) if 1e-9 < x < 1.0)
        roots = count_roots_on_segments(f, [1e-9, *crits, 1.0])
        dense = dense_sign_scan(lambda a: np.cos(a * h) - a, 1e-9, 1.0)
        assert len(roots) == dense


class TestPeriodicExtrema:
    def test_second_maximum_value(self):
        sched = periodic_extrema(6.5, "cos_family")
        assert sched.maxima_values[0] == pytest.approx(0.045213935482, abs=1e-9)
        assert sched.maxima_values[0] > 0.0

    def test_single_root_regime_maximum_negative(self):
        sched = periodic_extrema(2.0, "cos_family")
        assert sched.maxima_values[0] < 0.0

    def test_schedule_matches_construction(self):
        sched = periodic_extrema(9.0, "cos_family", k_max=5)
        for k, (m, value) in enumerate(zip(sched.minima, sched.minima_values)):
            assert m == pytest.approx(sched.m0 + 2 * k * math.pi / 9.0, abs=1e-14)
            assert value == pytest.approx(sched.minima_values[0] - 2 * k * math.pi / 9.0, abs=1e-12)

    def test_values_match_direct_evaluation(self):
        for h in (3.7, 6.5, 14.0):
            sched = periodic_extrema(h, "cos_family", k_max=4)
            gap = lambda a: math.cos(a * h) - a
            for x, v in zip(sched.minima, sched.minima_values):
                assert gap(x) == pytest.approx(v, abs=1e-12)
            for x, v in zip(sched.maxima, sched.maxima_values):
                assert gap(x) == pytest.approx(v, abs=1e-12)
            sin_sched = periodic_extrema(h, "sin_family", k_max=4)
            sin_gap = lambda a: math.sin(a * h) - a
            for x, v in zip(sin_sched.maxima, sin_sched.maxima_values):
                assert sin_gap(x) == pytest.approx(v, abs=1e-12)

    @given(
        a=st.floats(0.01, 1.0),
        k=st.integers(1, 6),
        h=st.floats(1.2, 25.0),
    )
    @settings(max_examples=150, deadline=None)
    def test_shift_identities(self, a, k, h):
        gap = lambda x: math.cos(x * h) - x
        sin_gap = lambda x: math.sin(x * h) - x
        period = 2 * k * math.pi / h
        assert gap(a + period) == pytest.approx(gap(a) - period, abs=1e-12)
        shift = math.pi / (2 * h)
        assert sin_gap(a + shift) == pytest.approx(gap(a) - shift, abs=1e-12)

    def test_rejects_monotone_regime(self):
        with pytest.raises(ValueError):
            periodic_extrema(0.9, "cos_family")


class TestSolveTangency:
    def _cos_window(self, h):
        sched = periodic_extrema(h, "cos_family", k_max=3)
        m0, m1, top = sched.minima[0], sched.minima[1], sched.maxima[0]
        return (m0 + 0.05 * (top - m0), m1 - 0.05 * (m1 - top))

    def _sin_window(self, h):
        sched = periodic_extrema(h, "sin_family", k_max=3)
        m0, m1, top = sched.minima[0], sched.minima[1], sched.maxima[1]
        return (m0 + 0.05 * (top - m0), m1 - 0.05 * (m1 - top))

    def test_cosine_family_onset(self):
        lam, x = solve_tangency(
            lambda a, h: math.cos(a * h) - a,
            lambda a, h: -h * math.sin(a * h) - 1.0,
            5.5,
            7.0,
            self._cos_window,
        )
        assert lam == pytest.approx(6.202, abs=5e-3)
        assert abs(math.cos(x * lam) - x) < 1e-10
        assert abs(-lam * math.sin(x * lam) - 1.0) < 1e-8

    def test_sine_family_onset(self):
        lam, x = solve_tangency(
            lambda a, h: math.sin(a * h) - a,
            lambda a, h: h * math.cos(a * h) - 1.0,
            7.0,
            8.5,
            self._sin_window,
        )
        assert lam == pytest.approx(7.790, abs=5e-3)
        assert abs(math.sin(x * lam) - x) < 1e-10

    def test_catenary_tangency_parameter(self):
        u = solve_monotone_interval(lambda u: u * math.tanh(u), 1.0, 1.0, 2.0)
        assert u == pytest.approx(1.19968, abs=1e-5)

    def test_no_sign_change_raises(self):
        with pytest.raises(ValueError):
            solve_tangency(
                lambda a, h: math.cos(a * h) - a,
                lambda a, h: -h * math.sin(a * h) - 1.0,
                2.0,
                3.0,
                self._cos_window,
            )


class TestOracleEquivalence:
    def test_gap_functions_match_dense_scan(self, rng):
        for _ in range(12):
            h = float(rng.uniform(0.2, 30.0))
            for trig in (np.cos, np.sin):
                f = lambda a: trig(a * h) - a
                cfg = ScanConfig(n=20001)
                roots = count_roots(f, _numeric_df(f), 1e-9, 1.0 + 1e-9, cfg)
                xs = [r.x for r in roots]
                if any(r.multiplicity is Multiplicity.TANGENTIAL for r in roots):
                    continue
                if len(xs) > 1 and min(np.diff(sorted(xs))) < 1e-4:
                    continue
                assert len(roots) == dense_sign_scan(f, 1e-9, 1.0 + 1e-9)


def _numeric_df(f, step=1e-7):
    def df(x):
        return (f(x + step) - f(x - step)) / (2 * step)

    return df
