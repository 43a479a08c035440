import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from tcdiscord.analysis import (
    PeakSet,
    find_peaks,
    max_quantifier,
    polyfit,
    revival_rate,
    revival_shift,
    slope_gqd_vs_vne,
)
from tcdiscord.dynamics import TimeSeries


def series(values, step=1.0):
    values = np.asarray(values, dtype=float)
    return TimeSeries(step * np.arange(len(values)), values)


def peaks_at(times):
    times = np.asarray(times, dtype=float)
    return PeakSet(times, np.ones_like(times), 0.0)


class TestPeaks:
    def test_simple(self):
        p = find_peaks(series([0, 1, 0, 2, 0]), threshold=0)
        assert list(p.indices) == [1, 3]
        assert list(p.peak_values) == [1, 2]

    def test_monotone(self):
        assert len(find_peaks(series(np.arange(10.0)))) == 0

    def test_sine(self):
        t = np.arange(0, 10 + 1e-9, 0.01)
        p = find_peaks(TimeSeries(t, np.sin(np.sqrt(6) * t)))
        # maxima at (pi/2 + 2 pi k)/sqrt(6) below 10
        expected = [(np.pi / 2 + 2 * np.pi * k) / np.sqrt(6) for k in range(4)]
        expected = [x for x in expected if x < 10]
        assert len(p) == len(expected) == 4
        assert np.allclose(p.peak_times, expected, atol=0.01)

    def test_threshold(self):
        s = series([0, 0.01, 0, 1, 0, 0.5, 0])
        assert list(find_peaks(s).indices) == [3, 5]  # default 5% of max drops the ripple
        assert list(find_peaks(s, 0.6).indices) == [3]

    def test_plateau_counted_once(self):
        p = find_peaks(series([0, 1, 1, 1, 0, 2, 0]), 0)
        assert list(p.indices) == [1, 5]

    def test_too_short(self):
        with pytest.raises(ValueError):
            find_peaks(series([1, 2]))

    def test_scale_invariance(self, rng):
        for _ in range(20):
            values = rng.random(200)
            s = rng.uniform(0.1, 10)
            a = find_peaks(series(values))
            b = find_peaks(series(s * values))
            assert np.array_equal(a.indices, b.indices)


class TestRates:
    def test_rate(self):
        assert revival_rate(peaks_at([1, 2, 3, 4, 5]), 10) == 0.5
        assert revival_rate(peaks_at([]), 10) == 0
        with pytest.raises(ValueError):
            revival_rate(peaks_at([1]), 0)

    @settings(max_examples=50, deadline=None)
    @given(st.integers(0, 30), st.floats(0.1, 100))
    def test_rate_times_span_is_count(self, count, span):
        assert revival_rate(peaks_at(np.arange(count)), span) * span == pytest.approx(count, rel=1e-14)

    def test_max(self):
        assert max_quantifier(series([0.3, 0.3, 0.3])) == (0.3, 0.0)
        assert max_quantifier(series([0, 0.4, 0.9, 0.4], step=0.5)) == (0.9, 1.0)

    def test_shift(self):
        a = peaks_at([1.0, 2.0, 3.0])
        b = peaks_at([0.9, 1.5])
        assert revival_shift(a, a) == 0
        assert revival_shift(a, b) == pytest.approx(0.5)
        assert revival_shift(a, b) == -revival_shift(b, a)
        assert revival_shift(a, b, 1) == pytest.approx(0.1)
        with pytest.raises(ValueError):
            revival_shift(a, peaks_at([1.0]))
        with pytest.raises(ValueError):
            revival_shift(a, a, 0)


class TestFits:
    def test_line(self):
        xs = np.arange(5.0)
        fit = polyfit(xs, 2 * xs + 1, 1)
        assert np.allclose(fit.coefficients, [1, 2])
        assert fit.residual_rms < 1e-12
        assert fit.slope == pytest.approx(2)
        assert fit(10.0) == pytest.approx(21)

    def test_parabola(self):
        xs = np.array([2.0, 3, 4, 5])
        assert np.allclose(polyfit(xs, xs**2, 2).coefficients, [0, 0, 1], atol=1e-10)

    def test_matches_lstsq(self, rng):
        xs = rng.random(12)
        ys = rng.random(12)
        V = np.vander(xs, 3, increasing=True)
        expected, *_ = np.linalg.lstsq(V, ys, rcond=None)
        assert np.allclose(polyfit(xs, ys, 2).coefficients, expected)

    @settings(max_examples=50, deadline=None)
    @given(st.integers(1, 2), st.lists(st.floats(-3, 3), min_size=3, max_size=3))
    def test_exact_data(self, degree, coef):
        xs = np.arange(2.0, 8.0)
        ys = np.polynomial.polynomial.polyval(xs, coef[: degree + 1])
        assert polyfit(xs, ys, degree).residual_rms <= 1e-10

    def test_too_few_points(self):
        with pytest.raises(ValueError):
            polyfit([1, 1, 2], [0, 1, 2], 2)
        with pytest.raises(ValueError):
            polyfit([1, 2], [0, 1, 2], 1)

    def test_gqd_vne_slope(self):
        t = np.linspace(0, 1, 11)
        vne = TimeSeries(t, np.sin(3 * t) ** 2)
        fit = slope_gqd_vs_vne(TimeSeries(t, vne.values), vne)
        assert fit.slope == pytest.approx(1) and abs(fit.coefficients[0]) < 1e-12
        assert slope_gqd_vs_vne(TimeSeries(t, 0.5 * vne.values), vne).slope == pytest.approx(0.5)
        with pytest.raises(ValueError):
            slope_gqd_vs_vne(TimeSeries(t + 1, vne.values), vne)
