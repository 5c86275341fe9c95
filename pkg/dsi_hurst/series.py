"""
Core data types and elementary numeric operations shared by every estimator.

All values are float64 numpy arrays. Types are frozen; operations return new
objects and never mutate their inputs.
"""
import logging
from dataclasses import dataclass
from enum import IntEnum

import numpy as np

from dsi_hurst.errors import DriftDomainError, InvalidInputError, SeriesTooShortError

logger = logging.getLogger(__name__)


class DiffOrder(IntEnum):
    FIRST = 1
    SECOND = 2


def as_order(r):
    try:
        return DiffOrder(int(r))
    except (TypeError, ValueError):
        raise InvalidInputError(f"difference order must be 1 or 2, got {r!r}") from None


def _as_finite_array(values, name):
    arr = np.array(values, dtype=float)
    if arr.ndim != 1:
        raise InvalidInputError(f"{name} must be one-dimensional")
    if not np.all(np.isfinite(arr)):
        raise InvalidInputError(f"{name} contains non-finite entries")
    return arr


@dataclass(frozen=True)
class TimeSeries:
    """Ordered (time, value) samples."""

    times: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        times = _as_finite_array(self.times, "times")
        values = _as_finite_array(self.values, "values")
        if times.shape != values.shape:
            raise InvalidInputError(
                f"times and values differ in length ({times.size} vs {values.size})"
            )
        if times.size > 1 and np.any(np.diff(times) <= 0):
            raise InvalidInputError("times must be strictly increasing")
        times.setflags(write=False)
        values.setflags(write=False)
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "values", values)

    @classmethod
    def from_values(cls, values, start=1.0, step=1.0):
        """Unit-step series indexed 1..n, the convention for daily records."""
        values = np.asarray(values, dtype=float)
        return cls(start + step * np.arange(values.size), values)

    def __len__(self):
        return int(self.values.size)

    @property
    def span(self):
        return float(self.times[0]), float(self.times[-1])

    def with_values(self, values):
        return TimeSeries(self.times, values)


@dataclass(frozen=True)
class ScalePartition:
    """Breakpoints a_0 < a_1 < ... < a_M delimiting M scale intervals.

    Interval k (1-based) is [a_{k-1}, a_k); the last one is closed at a_M.
    """

    breakpoints: np.ndarray

    def __post_init__(self):
        points = _as_finite_array(self.breakpoints, "breakpoints")
        if points.size < 2:
            raise InvalidInputError("a partition needs at least two breakpoints")
        if np.any(np.diff(points) <= 0):
            raise InvalidInputError("breakpoints must be strictly increasing")
        points.setflags(write=False)
        object.__setattr__(self, "breakpoints", points)

    @property
    def M(self):
        return int(self.breakpoints.size - 1)

    @property
    def lengths(self):
        return np.diff(self.breakpoints)

    @property
    def intervals(self):
        return list(zip(self.breakpoints[:-1].tolist(), self.breakpoints[1:].tolist()))

    def segment_index(self, times):
        """0-based interval index for every time; -1 where uncovered."""
        times = np.asarray(times, dtype=float)
        idx = np.searchsorted(self.breakpoints, times, side="right") - 1
        idx = np.where(times == self.breakpoints[-1], self.M - 1, idx)
        return np.where((idx < 0) | (idx >= self.M), -1, idx)


@dataclass(frozen=True)
class DriftSegment:
    start: float
    end: float
    alpha: float
    beta: float

    def __call__(self, t):
        return self.alpha + self.beta * np.asarray(t, dtype=float)


@dataclass(frozen=True)
class PiecewiseLinearDrift:
    """g(t) = alpha_k + beta_k * t on consecutive, disjoint segments.

    Segment k owns [start_k, end_k); the last segment also owns its end.
    """

    segments: tuple

    def __post_init__(self):
        segments = tuple(self.segments)
        if not segments:
            raise InvalidInputError("a drift needs at least one segment")
        for seg in segments:
            if not seg.end > seg.start:
                raise InvalidInputError(f"empty drift segment [{seg.start}, {seg.end})")
        for prev, nxt in zip(segments, segments[1:]):
            if nxt.start < prev.end:
                raise InvalidInputError("drift segments must be ordered and disjoint")
        object.__setattr__(self, "segments", segments)

    @classmethod
    def from_partition(cls, partition, coefficients):
        coefficients = list(coefficients)
        if len(coefficients) != partition.M:
            raise InvalidInputError(
                f"{len(coefficients)} (alpha, beta) pairs for {partition.M} intervals"
            )
        return cls(tuple(
            DriftSegment(float(a), float(b), float(alpha), float(beta))
            for (a, b), (alpha, beta) in zip(partition.intervals, coefficients)
        ))

    @classmethod
    def zero(cls, start, end):
        return cls((DriftSegment(float(start), float(end), 0.0, 0.0),))

    @property
    def alphas(self):
        return np.array([s.alpha for s in self.segments])

    @property
    def betas(self):
        return np.array([s.beta for s in self.segments])

    def segment_index(self, times):
        times = np.asarray(times, dtype=float)
        idx = np.full(times.shape, -1)
        last = len(self.segments) - 1
        for k, seg in enumerate(self.segments):
            inside = (times >= seg.start) & (times < seg.end)
            if k == last:
                inside |= times == seg.end
            idx = np.where(inside & (idx < 0), k, idx)
        return idx

    def __call__(self, times):
        times = np.asarray(times, dtype=float)
        idx = self.segment_index(times)
        if np.any(idx < 0):
            bad = times[idx < 0]
            raise DriftDomainError(
                f"{bad.size} time(s) outside the drift domain, first at t={bad[0]:g}"
            )
        return self.alphas[idx] + self.betas[idx] * times


def difference(x, r):
    """Order-r differences: length len(x) - r."""
    r = as_order(r)
    x = np.asarray(x, dtype=float)
    if x.size < r + 1:
        raise SeriesTooShortError(f"need at least {r + 1} values for order-{int(r)} differences, got {x.size}")
    return np.diff(x, n=int(r))


def subsample(x, k):
    """(x_k, x_2k, ..., x_{[N/k]k}) with 1-based indexing: exactly N // k entries."""
    if int(k) != k or k < 1:
        raise InvalidInputError(f"subsampling stride must be a positive integer, got {k!r}")
    x = np.asarray(x, dtype=float)
    k = int(k)
    if x.size < k:
        raise SeriesTooShortError(f"stride {k} leaves no samples out of {x.size}")
    return x[k - 1::k]


def sample_variance(y, unbiased=False):
    """Mean squared deviation from the sample mean, divisor n (n - 1 if unbiased)."""
    y = _as_finite_array(y, "sample")
    if y.size < 2:
        raise SeriesTooShortError(f"sample variance needs at least 2 values, got {y.size}")
    return float(np.var(y, ddof=1 if unbiased else 0))


def ols_line(t, x):
    """Least-squares (intercept, slope) of x on t."""
    t = _as_finite_array(t, "times")
    x = _as_finite_array(x, "values")
    if t.size != x.size:
        raise InvalidInputError("times and values differ in length")
    if t.size < 2:
        raise SeriesTooShortError("a regression line needs at least 2 points")
    t_bar = t.mean()
    x_bar = x.mean()
    tc = t - t_bar
    sxx = float(tc @ tc)
    if sxx <= 0.0:
        raise InvalidInputError("all times are equal; the regression design is singular")
    slope = float(tc @ (x - x_bar)) / sxx
    return float(x_bar - slope * t_bar), slope


def window(x, start, end):
    """Samples with start <= t <= end."""
    mask = (x.times >= start) & (x.times <= end)
    if np.count_nonzero(mask) < 2:
        raise SeriesTooShortError(f"fewer than 2 samples in window [{start:g}, {end:g}]")
    return TimeSeries(x.times[mask], x.values[mask])
