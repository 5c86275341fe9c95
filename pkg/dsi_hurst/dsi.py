"""
Hurst estimation for DSI processes with stationary increments inside scale
intervals.

On a grid of q equally spaced points per scale interval, the variance of the
increments grows by lambda^{2H} from one interval to the next. S_k^2 estimates
that variance in interval k; mu_k = S_k^2 / S_{k-1}^2 estimates lambda^{2H}
and H_i = log(mu_{i+1}) / (2 log lambda).
"""
import logging
from dataclasses import dataclass

import numpy as np

from dsi_hurst.detrend import eliminate_drift, fit_global_drift, fit_piecewise_drift
from dsi_hurst.errors import DegenerateVarianceError, InvalidInputError, SeriesTooShortError, pipeline_stage
from dsi_hurst.scalegrid import (
    ORIENTATIONS,
    detect_scale_intervals,
    equally_spaced_grid,
    estimate_scale,
    resample_on_grid,
)
from dsi_hurst.series import DiffOrder, ScalePartition, as_order, difference, sample_variance, window

logger = logging.getLogger(__name__)

BOUNDARIES = ("within", "cross")
DRIFT_MODES = ("none", "global", "piecewise")
LAMBDA_MODES = ("mean", "per_pair")


@dataclass(frozen=True)
class DsiEstimate:
    interval_variances: np.ndarray  # S_k^2, k = 1..M
    mu_hats: np.ndarray  # S_k^2 / S_{k-1}^2, k = 2..M
    hurst_per_interval: np.ndarray  # H_i, i = 1..M-1
    hurst_mean: float
    lambda_used: np.ndarray  # one lambda per interval pair
    diff_order: DiffOrder
    mu_mean: float
    hurst_from_mu_mean: float


@dataclass(frozen=True)
class DsiPipelineResult:
    estimate: DsiEstimate
    partition: ScalePartition
    scale_forward: object
    scale_backward: object
    drift: object
    drift_mode: str
    boundary: str
    q: int
    orientation: str = "forward"


def interval_increment_variances(y, grid, r=1, boundary="within"):
    """S_k^2: variance of order-r differences of the q samples of each interval.

    ``within`` uses only increments between samples of the same interval
    (q - r terms); ``cross`` also takes the increment(s) reaching the first
    sample of the next interval (q + 1 - r terms), so ``y`` must then carry
    one extra sample at the partition end.
    """
    r = as_order(r)
    if boundary not in BOUNDARIES:
        raise InvalidInputError(f"boundary must be one of {BOUNDARIES}, got {boundary!r}")
    q = grid.q
    if q < r + 2:
        raise SeriesTooShortError(f"q={q} leaves fewer than 2 order-{int(r)} differences per interval")
    n_points = grid.points.size
    values = y.values
    extra = 1 if boundary == "cross" else 0
    if boundary == "cross" and y.values.size == n_points:
        raise InvalidInputError(
            "cross-boundary increments need a sample at the partition end after the last interval"
        )
    if y.values.size != n_points + extra or not np.allclose(y.times[:n_points], grid.points):
        raise InvalidInputError("series is not sampled on the grid")
    variances = np.empty(grid.partition.M)
    for k in range(grid.partition.M):
        block = values[k * q:(k + 1) * q + extra]
        variances[k] = sample_variance(difference(block, r))
    logger.debug("interval variances (r=%d, %s): %s", r, boundary, variances)
    return variances


def estimate_dsi_hurst(variances, lam, r=1):
    """Ratio estimates mu_k and H_i = log(S_{i+1}^2 / S_i^2) / (2 log lambda).

    ``lam`` is either one scale for all pairs or one per pair (time-dependent).
    """
    r = as_order(r)
    variances = np.asarray(variances, dtype=float)
    if variances.size < 2:
        raise InvalidInputError("Hurst estimation needs at least 2 scale intervals")
    zero = np.flatnonzero(variances <= 0)
    if zero.size:
        raise DegenerateVarianceError(
            f"zero increment variance in scale interval {zero[0] + 1}", where=int(zero[0] + 1)
        )
    lam = np.broadcast_to(np.asarray(lam, dtype=float), (variances.size - 1,)).copy()
    if np.any(lam <= 1):
        raise InvalidInputError(f"scale must exceed 1, got {lam[lam <= 1][0]:g}")
    mu = variances[1:] / variances[:-1]
    hurst = np.log(mu) / (2.0 * np.log(lam))
    mu_mean = float(mu.mean())
    return DsiEstimate(
        interval_variances=variances,
        mu_hats=mu,
        hurst_per_interval=hurst,
        hurst_mean=float(hurst.mean()),
        lambda_used=lam,
        diff_order=r,
        mu_mean=mu_mean,
        hurst_from_mu_mean=float(np.log(mu_mean) / (2.0 * np.log(lam.mean()))),
    )


def dsi_pipeline(x, q, M=None, r=1, drift_mode="piecewise", breakpoints=None, boundary="within",
                 orientation="auto", lambda_mode="mean", min_len=4):
    """Partition, drift removal, grid resampling, interval variances, estimate.

    Supplying ``breakpoints`` bypasses detection. ``orientation="auto"`` reads
    the interval lengths forward when they grow and backward when they shrink.
    Errors carry the stage they arose in.
    """
    if drift_mode not in DRIFT_MODES:
        raise InvalidInputError(f"drift_mode must be one of {DRIFT_MODES}, got {drift_mode!r}")
    if lambda_mode not in LAMBDA_MODES:
        raise InvalidInputError(f"lambda_mode must be one of {LAMBDA_MODES}, got {lambda_mode!r}")

    with pipeline_stage("detect"):
        if breakpoints is not None:
            partition = breakpoints if isinstance(breakpoints, ScalePartition) else ScalePartition(breakpoints)
        else:
            partition = detect_scale_intervals(x, M=M, min_len=min_len)
        if partition.M < 2:
            raise InvalidInputError("the partition has a single scale interval; nothing to compare")
        lo, hi = partition.breakpoints[0], partition.breakpoints[-1]
        x = window(x, lo, hi)
        forward = estimate_scale(partition, "forward")
        backward = estimate_scale(partition, "backward")
        scales = {"forward": forward, "backward": backward}
        if orientation == "auto":
            orientation = "forward" if forward.mean_ratio > 1 else "backward"
        elif orientation not in ORIENTATIONS:
            raise InvalidInputError(f"orientation must be auto or one of {ORIENTATIONS}, got {orientation!r}")
        scale = scales[orientation]
        if scale.mean_ratio <= 1:
            other = "backward" if orientation == "forward" else "forward"
            hint = f"; use orientation {other!r}" if scales[other].mean_ratio > 1 else ""
            raise InvalidInputError(
                f"scale estimate {scale.mean_ratio:.6g} does not exceed 1: the intervals do not grow "
                f"in {orientation} orientation{hint}"
            )

    with pipeline_stage("drift"):
        if drift_mode == "none":
            drift = None
            residual = x
        else:
            drift = fit_global_drift(x) if drift_mode == "global" else fit_piecewise_drift(x, partition)
            residual = eliminate_drift(x, drift)

    with pipeline_stage("grid"):
        grid = equally_spaced_grid(partition, q)
        sampled = resample_on_grid(residual, grid, include_end=boundary == "cross")

    with pipeline_stage("variance"):
        variances = interval_increment_variances(sampled, grid, r, boundary)

    with pipeline_stage("estimate"):
        lam = scale.per_pair_ratios if lambda_mode == "per_pair" else scale.mean_ratio
        estimate = estimate_dsi_hurst(variances, lam, r)

    logger.info("DSI estimate (%s drift, r=%d): H mean %.4f over %d intervals",
                drift_mode, int(r), estimate.hurst_mean, partition.M)
    return DsiPipelineResult(
        estimate=estimate,
        partition=partition,
        scale_forward=forward,
        scale_backward=backward,
        drift=drift,
        drift_mode=drift_mode,
        boundary=boundary,
        q=int(q),
        orientation=orientation,
    )


def compare_drift_modes(x, q, breakpoints=None, **kwargs):
    """dsi_pipeline under each drift treatment, on one shared partition."""
    if breakpoints is None:
        with pipeline_stage("detect"):
            breakpoints = detect_scale_intervals(
                x, M=kwargs.pop("M", None), min_len=kwargs.get("min_len", 4)
            )
    kwargs.pop("M", None)
    kwargs.pop("drift_mode", None)
    return {mode: dsi_pipeline(x, q, breakpoints=breakpoints, drift_mode=mode, **kwargs)
            for mode in DRIFT_MODES}
