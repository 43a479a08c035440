"""Figure-level quantities extracted from quantifier time series.

Revivals are counted as local maxima: a point (or the left edge of a flat
run) that is strictly higher than its neighbours on both sides and at least
``threshold`` high.  The revival rate ``m_R`` (also written ``t_R``) is the
number of such maxima per unit scaled time.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.polynomial import polynomial as P
from scipy.signal import find_peaks as _scipy_find_peaks

from .dynamics import TimeSeries

DEFAULT_THRESHOLD_FRACTION = 0.05


@dataclass(frozen=True)
class PeakSet:
    peak_times: np.ndarray
    peak_values: np.ndarray
    threshold: float
    indices: np.ndarray = None

    def __len__(self):
        return len(self.peak_times)


@dataclass(frozen=True)
class FitResult:
    """Least-squares polynomial, coefficients constant first."""

    coefficients: np.ndarray
    residual_rms: float
    degree: int

    def __call__(self, x):
        return P.polyval(x, self.coefficients)

    @property
    def slope(self) -> float:
        return float(self.coefficients[1])


def find_peaks(series: TimeSeries, threshold: float | None = None) -> PeakSet:
    """Local maxima of ``series.values`` at or above ``threshold``.

    The default threshold is 5% of the series maximum.
    """
    values = series.values
    if len(values) < 3:
        raise ValueError("need at least 3 points to locate peaks")
    if threshold is None:
        threshold = DEFAULT_THRESHOLD_FRACTION * float(values.max())
    _, props = _scipy_find_peaks(values, height=threshold, plateau_size=1)
    idx = props["left_edges"].astype(int)
    return PeakSet(series.times[idx], values[idx], float(threshold), idx)


def revival_rate(peaks: PeakSet, t_span: float) -> float:
    """Maxima per unit scaled time (``m_R``)."""
    if t_span <= 0:
        raise ValueError("t_span must be positive")
    return len(peaks) / t_span


def max_quantifier(series: TimeSeries):
    """``(max value, earliest time at which it is reached)``; gives d_max or e_max."""
    values = series.values
    if len(values) == 0:
        raise ValueError("empty series")
    top = float(values.max())
    first = int(np.argmax(values >= top - 1e-12))
    return top, float(series.times[first])


def revival_shift(reference: PeakSet, target: PeakSet, peak_number: int = 2) -> float:
    """Difference of the ``peak_number``-th revival time, reference minus target.

    Positive when the target system revives earlier.
    """
    if peak_number < 1:
        raise ValueError("peak_number is 1-based")
    for name, peaks in (("reference", reference), ("target", target)):
        if len(peaks) < max(2, peak_number):
            raise ValueError(f"{name} has {len(peaks)} peaks, need {max(2, peak_number)}")
    return float(reference.peak_times[peak_number - 1] - target.peak_times[peak_number - 1])


def polyfit(xs, ys, degree: int) -> FitResult:
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    if xs.shape != ys.shape or xs.ndim != 1:
        raise ValueError("xs and ys must be 1-d and of equal length")
    if len(np.unique(xs)) < degree + 1:
        raise ValueError(f"need {degree + 1} distinct abscissae for a degree-{degree} fit")
    coef = P.polyfit(xs, ys, degree)
    resid = ys - P.polyval(xs, coef)
    return FitResult(coef, float(np.sqrt(np.mean(resid**2))), degree)


def slope_gqd_vs_vne(gqd: TimeSeries, vne: TimeSeries) -> FitResult:
    """Straight-line fit of GQD against VNE over a shared time grid."""
    if gqd.times.shape != vne.times.shape or not np.array_equal(gqd.times, vne.times):
        raise ValueError("series are on different time grids")
    return polyfit(vne.values, gqd.values, 1)
