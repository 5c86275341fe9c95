"""
Scale intervals: breakpoint detection by piecewise-quadratic segmentation,
the scale estimate lambda-hat from interval lengths, and the sampling grids
(q equally spaced points per interval, or geometric alpha^(nT+k)).
"""
import logging
from dataclasses import dataclass

import numpy as np

from dsi_hurst.errors import InvalidInputError, SeriesTooShortError
from dsi_hurst.series import ScalePartition, TimeSeries

logger = logging.getLogger(__name__)

ORIENTATIONS = ("forward", "backward")


@dataclass(frozen=True)
class ScaleEstimate:
    per_pair_ratios: np.ndarray
    mean_ratio: float
    orientation: str = "forward"


@dataclass(frozen=True)
class SamplingGrid:
    points: np.ndarray
    q: int
    partition: ScalePartition

    def interval_points(self, k):
        """Points of the k-th interval (0-based)."""
        return self.points[k * self.q:(k + 1) * self.q]


class _QuadraticCosts:
    """O(1) residual sum of squares of a quadratic fit on any index range [i, j).

    Times are mapped to [-1, 1] and values standardized before the prefix sums
    are taken, which keeps the 3x3 normal equations well scaled.
    """

    def __init__(self, t, x):
        lo, hi = t[0], t[-1]
        u = 2.0 * (t - lo) / (hi - lo) - 1.0
        scale = x.std() or 1.0
        y = (x - x.mean()) / scale
        self.scale2 = scale ** 2
        powers = np.vstack([u ** p for p in range(5)])
        zero = np.zeros((1,))
        self.p = [np.concatenate([zero, np.cumsum(row)]) for row in powers]
        self.q = [np.concatenate([zero, np.cumsum(y * powers[p])]) for p in range(3)]
        self.r = np.concatenate([zero, np.cumsum(y * y)])

    def ending_at(self, starts, end):
        """Residual sums of squares for segments [s, end), s in ``starts``."""
        p = [row[end] - row[starts] for row in self.p]
        b = np.stack([row[end] - row[starts] for row in self.q], axis=-1)
        a = np.stack([
            np.stack([p[0], p[1], p[2]], axis=-1),
            np.stack([p[1], p[2], p[3]], axis=-1),
            np.stack([p[2], p[3], p[4]], axis=-1),
        ], axis=-2)
        try:
            coef = np.linalg.solve(a, b[..., None])[..., 0]
        except np.linalg.LinAlgError:
            coef = np.stack([np.linalg.lstsq(ai, bi, rcond=None)[0] for ai, bi in zip(a, b)])
        sse = (self.r[end] - self.r[starts]) - np.einsum("ij,ij->i", coef, b)
        return np.clip(sse, 0.0, None) * self.scale2


def _segment(costs, n, max_m, min_len):
    """Optimal segmentations of [0, n) into 1..max_m pieces by dynamic programming."""
    dp = np.full((max_m + 1, n + 1), np.inf)
    back = np.zeros((max_m + 1, n + 1), dtype=int)
    dp[0, 0] = 0.0
    for end in range(min_len, n + 1):
        starts = np.arange(0, end - min_len + 1)
        seg = costs.ending_at(starts, end)
        for m in range(1, max_m + 1):
            cand = dp[m - 1, starts] + seg
            best = int(np.argmin(cand))
            dp[m, end] = cand[best]
            back[m, end] = starts[best]
    return dp, back


def _backtrack(back, n, m):
    cuts = []
    end = n
    for level in range(m, 0, -1):
        start = back[level, end]
        cuts.append(start)
        end = start
    return sorted(cuts)


def detect_scale_intervals(x, M=None, min_len=4, penalty=1.0, max_intervals=10):
    """Breakpoints minimizing the total squared residual of one quadratic per segment.

    ``M=None`` picks the count minimizing SSE + penalty * M * log(N) * sigma2,
    with sigma2 the noise variance estimated from first differences.
    """
    if min_len < 4:
        raise InvalidInputError(f"min_len must be at least 4, got {min_len}")
    t, v = x.times, x.values
    n = t.size
    if M is not None:
        if M < 1:
            raise InvalidInputError(f"M must be at least 1, got {M}")
        if n < M * min_len:
            raise SeriesTooShortError(f"{n} samples cannot hold {M} segments of at least {min_len}")
        max_m = M
    else:
        max_m = max(1, min(max_intervals, n // min_len))
        if n < min_len:
            raise SeriesTooShortError(f"{n} samples cannot hold a segment of {min_len}")

    dp, back = _segment(_QuadraticCosts(t, v), n, max_m, min_len)

    if M is None:
        sigma2 = float(np.var(np.diff(v))) / 2.0
        crit = dp[1:, n] + penalty * np.arange(1, max_m + 1) * np.log(n) * sigma2
        total = float(np.sum((v - v.mean()) ** 2)) or 1.0
        M = int(np.flatnonzero(crit <= crit.min() + 1e-12 * total)[0]) + 1
        logger.debug("auto interval count %d (criterion %s)", M, np.round(crit, 6))

    cuts = _backtrack(back, n, M)
    breakpoints = np.concatenate([t[cuts], [t[-1]]])
    logger.debug("breakpoints %s, residual %.6g", breakpoints, dp[M, n])
    return ScalePartition(breakpoints)


def estimate_scale(p, orientation="forward"):
    """Mean ratio of successive interval lengths.

    forward: (a_{i+1} - a_i) / (a_i - a_{i-1}); backward: the reciprocals.
    """
    if orientation not in ORIENTATIONS:
        raise InvalidInputError(f"orientation must be one of {ORIENTATIONS}, got {orientation!r}")
    if p.breakpoints.size < 3:
        raise InvalidInputError("scale estimation needs at least 3 breakpoints (2 intervals)")
    lengths = p.lengths
    if np.any(lengths <= 0):
        raise InvalidInputError("zero-length scale interval")
    if orientation == "forward":
        ratios = lengths[1:] / lengths[:-1]
    else:
        ratios = lengths[:-1] / lengths[1:]
    return ScaleEstimate(ratios, float(ratios.mean()), orientation)


def equally_spaced_grid(p, q):
    """q points a_{k-1} + (i - 1) d_k per interval, d_k = (a_k - a_{k-1}) / q."""
    if int(q) != q or q < 2:
        raise InvalidInputError(f"q must be an integer of at least 2, got {q!r}")
    q = int(q)
    points = np.concatenate([
        np.linspace(a, b, q, endpoint=False) for a, b in p.intervals
    ])
    return SamplingGrid(points, q, p)


def geometric_grid(alpha, T, n_range):
    """Points alpha^(nT + k), n in ``n_range``, k = 0..T-1; lambda = alpha^T."""
    if alpha <= 1:
        raise InvalidInputError(f"alpha must exceed 1, got {alpha}")
    if int(T) != T or T < 1:
        raise InvalidInputError(f"T must be a positive integer, got {T!r}")
    if not isinstance(n_range, range):
        n_range = range(*n_range)
    exponents = np.array([n * int(T) + k for n in n_range for k in range(int(T))], dtype=float)
    return float(alpha) ** exponents


def resample_on_grid(x, grid, include_end=False):
    """Last observation at or before each grid point; output times are the grid points.

    A grid point within round-off of a sample time selects that sample.
    ``include_end`` also samples the partition end a_M.
    """
    points = grid.points
    if include_end:
        points = np.append(points, grid.partition.breakpoints[-1])
    lo, hi = x.span
    tol = 1e-9 * max(1.0, hi - lo)
    idx = np.searchsorted(x.times, points + tol, side="right") - 1
    if np.any(idx < 0):
        first = points[np.argmax(idx < 0)]
        raise InvalidInputError(f"grid point {first:g} precedes the first sample at {lo:g}")
    return TimeSeries(points, x.values[idx])
