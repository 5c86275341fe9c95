"""
Variance-ratio Hurst estimator for self-similar processes with stationary
increments (diff1 / diff2).

For a stride k, order-r differences of the subsampled series Z_k, Z_2k, ...
have k^{2H} times the variance of the order-r differences of Z itself. Each
k = 2..K* gives H_k = log(S2_{r,k,2} / S2_{r,k,1}) / (2 log k); the estimate
is their mean.
"""
import logging
from dataclasses import dataclass

import numpy as np

from dsi_hurst.errors import DegenerateVarianceError, SeriesTooShortError
from dsi_hurst.series import DiffOrder, as_order, difference, ols_line, sample_variance, subsample

logger = logging.getLogger(__name__)

K_STAR_CAP = 20
SAMPLES_PER_STRIDE = 30


@dataclass(frozen=True)
class HsssiEstimate:
    strides: np.ndarray  # k = 2..K*
    ratios: np.ndarray
    per_k_hurst: np.ndarray
    hurst: float
    K_star: int
    r: DiffOrder
    detrended: bool


def kstar(N):
    """K* = min(20, floor(N / 30))."""
    if N < 2 * SAMPLES_PER_STRIDE:
        raise SeriesTooShortError(f"N={N} gives K* < 2; at least {2 * SAMPLES_PER_STRIDE} samples are needed")
    return min(K_STAR_CAP, N // SAMPLES_PER_STRIDE)


def variance_ratio_pair(z, k, r=1, all_terms=False):
    """(S2_{r,k,2}, S2_{r,k,1}) over floor(N/k) - r terms each.

    ``all_terms`` computes S2_{r,k,1} over all N - r differences instead.
    """
    r = as_order(r)
    z = np.asarray(z, dtype=float)
    n_terms = z.size // k - r
    if n_terms < 2:
        raise SeriesTooShortError(f"stride {k} leaves {max(n_terms, 0)} order-{int(r)} differences; need 2")
    strided = difference(subsample(z, k), r)
    unit = difference(z, r)
    s2_k = sample_variance(strided)
    s2_1 = sample_variance(unit if all_terms else unit[:n_terms])
    if s2_k <= 0 or s2_1 <= 0:
        raise DegenerateVarianceError(f"zero sample variance at stride k={k}", where=int(k))
    return s2_k, s2_1


def estimate_hsssi(x, r=1, detrend=True, all_terms=False, k_max=None):
    """Mean over k = 2..K* of log(S2_{r,k,2} / S2_{r,k,1}) / (2 log k).

    With ``detrend`` the global regression line is removed first.
    """
    r = as_order(r)
    n = len(x)
    K = kstar(n)
    if k_max is not None:
        K = int(k_max)
    if K < 2:
        raise SeriesTooShortError(f"K*={K} leaves no strides to average")
    z = x.values
    if detrend:
        a, b = ols_line(x.times, z)
        z = z - (a + b * x.times)
    strides = np.arange(2, K + 1)
    ratios = np.empty(strides.size)
    for i, k in enumerate(strides):
        s2_k, s2_1 = variance_ratio_pair(z, int(k), r, all_terms)
        ratios[i] = s2_k / s2_1
    per_k = np.log(ratios) / (2.0 * np.log(strides))
    logger.debug("diff%d ratios: %s", int(r), ratios)
    return HsssiEstimate(
        strides=strides,
        ratios=ratios,
        per_k_hurst=per_k,
        hurst=float(per_k.mean()),
        K_star=K,
        r=r,
        detrended=bool(detrend),
    )
