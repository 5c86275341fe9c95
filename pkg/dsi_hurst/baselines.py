"""
Fluctuation-function Hurst estimators: FA, DFA-1 and backward DMA.

Each takes an increment series, builds the profile (cumulative sum of the
centered increments) and reports F(s) over a scale grid together with the
least-squares slope of log F against log s.
"""
import logging
from dataclasses import dataclass

import numpy as np

from dsi_hurst.errors import DegenerateVarianceError, InvalidInputError, SeriesTooShortError
from dsi_hurst.series import ols_line

logger = logging.getLogger(__name__)

METHODS = ("FA", "DFA", "DMA")


@dataclass(frozen=True)
class FluctuationCurve:
    scales: np.ndarray
    F: np.ndarray
    hurst: float
    method: str


def profile(x):
    """Y_t = sum_{i <= t} (x_i - mean(x))."""
    x = np.asarray(x, dtype=float)
    if x.size < 2:
        raise SeriesTooShortError("a profile needs at least 2 increments")
    return np.cumsum(x - x.mean())


def default_scales(n, count=12, smallest=8):
    """``count`` geometrically spaced integer scales from ``smallest`` to n // 4."""
    largest = n // 4
    if largest < smallest:
        raise SeriesTooShortError(f"n={n} is too short for scales from {smallest} to n/4")
    scales = np.unique(np.round(np.geomspace(smallest, largest, count)).astype(int))
    return scales


def _check_scales(scales, n, smallest):
    scales = np.unique(np.asarray(scales, dtype=int))
    if scales.size == 0:
        raise InvalidInputError("empty scale set")
    if scales[0] < smallest or scales[-1] > n // 4:
        raise InvalidInputError(
            f"scales must lie in [{smallest}, {n // 4}] for n={n}, got [{scales[0]}, {scales[-1]}]"
        )
    return scales


def fit_loglog_slope(scales, F):
    """Least-squares slope of log F against log s."""
    scales = np.asarray(scales, dtype=float)
    F = np.asarray(F, dtype=float)
    if scales.size < 2:
        raise InvalidInputError("a log-log fit needs at least 2 scales")
    if np.any(F <= 0):
        s = scales[np.argmax(F <= 0)]
        raise DegenerateVarianceError(f"non-positive fluctuation at scale {s:g}", where=float(s))
    return ols_line(np.log(scales), np.log(F))[1]


def _curve(scales, F, method):
    curve = FluctuationCurve(scales, F, fit_loglog_slope(scales, F), method)
    logger.debug("%s slope %.4f over scales %s", method, curve.hurst, scales)
    return curve


def fa(x, scales=None):
    """F(s)^2 = mean over t of (Y_{t+s} - Y_t)^2."""
    y = profile(x)
    scales = default_scales(y.size) if scales is None else _check_scales(scales, y.size, 1)
    F = np.array([np.sqrt(np.mean((y[s:] - y[:-s]) ** 2)) for s in scales])
    return _curve(scales, F, "FA")


def _window_residual_ms(segments):
    """Mean square residual of a least-squares line in each row."""
    s = segments.shape[1]
    u = np.arange(s) - (s - 1) / 2.0
    centered = segments - segments.mean(axis=1, keepdims=True)
    slope = centered @ u / (u @ u)
    residual = centered - slope[:, None] * u
    return np.mean(residual ** 2, axis=1)


def dfa(x, scales=None, poly_order=1):
    """DFA-1: RMS of per-window linear-fit residuals of the profile.

    Non-overlapping windows are laid from both ends of the profile and all
    windows are averaged.
    """
    if poly_order != 1:
        raise InvalidInputError("only first-order DFA is supported")
    y = profile(x)
    n = y.size
    scales = default_scales(n) if scales is None else _check_scales(scales, n, poly_order + 2)
    F = np.empty(scales.size)
    for i, s in enumerate(scales):
        count = n // s
        head = y[:count * s].reshape(count, s)
        tail = y[n - count * s:].reshape(count, s)
        F[i] = np.sqrt(np.mean(_window_residual_ms(np.vstack([head, tail]))))
    return _curve(scales, F, "DFA")


def dma(x, windows=None):
    """Backward DMA: F(n)^2 = mean over i >= n of (Y_i - trailing n-point mean)^2."""
    y = profile(x)
    windows = default_scales(y.size) if windows is None else _check_scales(windows, y.size, 2)
    csum = np.concatenate([[0.0], np.cumsum(y)])
    F = np.empty(windows.size)
    for i, w in enumerate(windows):
        moving = (csum[w:] - csum[:-w]) / w
        F[i] = np.sqrt(np.mean((y[w - 1:] - moving) ** 2))
    return _curve(windows, F, "DMA")


ESTIMATORS = {"FA": fa, "DFA": dfa, "DMA": dma}
