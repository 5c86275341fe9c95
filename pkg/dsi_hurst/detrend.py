"""
Fit and eliminate global or per-scale-interval linear drift.

Drift lines are fitted on the raw levels, one ordinary least-squares line per
segment.
"""
import logging

import numpy as np

from dsi_hurst.errors import SeriesTooShortError
from dsi_hurst.series import DriftSegment, PiecewiseLinearDrift, ols_line

logger = logging.getLogger(__name__)


def fit_global_drift(x):
    lo, hi = x.span
    alpha, beta = ols_line(x.times, x.values)
    return PiecewiseLinearDrift((DriftSegment(lo, hi, alpha, beta),))


def fit_piecewise_drift(x, p):
    """One OLS line per scale interval; segment domains are the partition intervals."""
    idx = p.segment_index(x.times)
    segments = []
    for k, (a, b) in enumerate(p.intervals):
        mask = idx == k
        if np.count_nonzero(mask) < 2:
            raise SeriesTooShortError(
                f"scale interval {k + 1} [{a:g}, {b:g}) holds fewer than 2 samples"
            )
        alpha, beta = ols_line(x.times[mask], x.values[mask])
        segments.append(DriftSegment(a, b, alpha, beta))
        logger.debug("interval %d: alpha=%.6g beta=%.6g", k + 1, alpha, beta)
    return PiecewiseLinearDrift(tuple(segments))


def eliminate_drift(x, g):
    """Z(t) = X(t) - g(t); times unchanged."""
    return x.with_values(x.values - g(x.times))
