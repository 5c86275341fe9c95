"""
Exact simulation of fractional Gaussian noise / fractional Brownian motion and
of the simple Brownian motion DSI process, with drift injection.

fGn is synthesized by circulant embedding of its autocovariance (Davies-Harte),
falling back to a Cholesky factor of the full covariance when the embedding is
not nonnegative definite. Both are exact in distribution.
"""
import logging
from functools import lru_cache
from typing import Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from dsi_hurst.errors import DriftDomainError, SimulationError
from dsi_hurst.series import PiecewiseLinearDrift, ScalePartition, TimeSeries

logger = logging.getLogger(__name__)

# eigenvalues below -EIGEN_TOL * max are a real embedding failure, above it round-off
EIGEN_TOL = 1e-8
CHOLESKY_MAX_N = 4096


class FbmSpec(BaseModel):
    n: int = Field(..., ge=2, description="Number of samples.")
    hurst: float = Field(..., gt=0.0, lt=1.0, description="Hurst index H in (0, 1).")
    sigma: float = Field(1.0, gt=0.0, description="Scale: Var(B_H(1)) = sigma^2.")
    seed: int = Field(0, ge=0, lt=2**64, description="Reproducibility seed.")


class SimpleBmDsiSpec(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    hurst: float = Field(..., gt=0.0, description="Hurst index H > 0.")
    lam: float = Field(..., gt=1.0, description="Scale lambda > 1.")
    M: int = Field(..., ge=1, description="Number of scale intervals [lambda^(n-1), lambda^n).")
    mesh: int = Field(..., ge=1, description="Samples per unit time.")
    drift: Optional[PiecewiseLinearDrift] = Field(None, description="Drift g(t) added pointwise.")
    seed: int = Field(0, ge=0, lt=2**64, description="Reproducibility seed.")

    @property
    def partition(self):
        return ScalePartition(self.lam ** np.arange(self.M + 1))


def replication_rng(seed, index):
    """Independent generator for replication ``index`` of a run seeded with ``seed``.

    The same (seed, index) pair always yields the same stream, whatever order
    or thread the replication runs in.
    """
    return np.random.default_rng(np.random.SeedSequence(entropy=int(seed), spawn_key=(int(index),)))


def fgn_autocovariance(h, hurst, sigma=1.0):
    """gamma(h) = (sigma^2 / 2)(|h+1|^2H - 2|h|^2H + |h-1|^2H)."""
    h = np.abs(np.asarray(h, dtype=float))
    two_h = 2.0 * hurst
    return 0.5 * sigma ** 2 * (np.abs(h + 1) ** two_h - 2 * h ** two_h + np.abs(h - 1) ** two_h)


@lru_cache(maxsize=64)
def _circulant_eigenvalues(n, hurst):
    gamma = fgn_autocovariance(np.arange(n + 1), hurst)
    row = np.concatenate([gamma, gamma[-2:0:-1]])
    eig = np.fft.fft(row).real
    top = eig.max()
    if eig.min() < -EIGEN_TOL * top:
        return None
    eig = np.clip(eig, 0.0, None)
    eig.setflags(write=False)
    return eig


def _cholesky_fgn(n, hurst, rng):
    if n > CHOLESKY_MAX_N:
        raise SimulationError(
            f"circulant embedding is not nonnegative definite for n={n}, H={hurst} "
            f"and n exceeds the Cholesky limit of {CHOLESKY_MAX_N}",
            method="cholesky",
        )
    lags = np.abs(np.subtract.outer(np.arange(n), np.arange(n)))
    try:
        factor = np.linalg.cholesky(fgn_autocovariance(lags, hurst))
    except np.linalg.LinAlgError as e:
        raise SimulationError(f"Cholesky factorization failed: {e}", method="cholesky") from e
    return factor @ rng.standard_normal(n)


def generate_fgn(spec, rng=None):
    """n exact fGn increments with autocovariance gamma(h)."""
    rng = np.random.default_rng(spec.seed) if rng is None else rng
    n = spec.n
    eig = _circulant_eigenvalues(n, spec.hurst)
    if eig is None:
        logger.warning("circulant embedding failed for n=%d H=%.3f, using Cholesky", n, spec.hurst)
        return spec.sigma * _cholesky_fgn(n, spec.hurst, rng)
    m = eig.size
    xi = rng.standard_normal(m) + 1j * rng.standard_normal(m)
    # Re and Im of the transform are independent N(0, C); keep Re.
    z = np.fft.fft(np.sqrt(eig / m) * xi)
    return spec.sigma * z.real[:n]


def generate_fbm(spec, rng=None):
    """B_H at t = 1..n as the cumulative sum of fGn (B_H(0) = 0 is implicit)."""
    increments = generate_fgn(spec, rng)
    return TimeSeries.from_values(np.cumsum(increments))


def simple_bm_dsi_times(spec):
    horizon = spec.lam ** spec.M
    count = int(np.ceil((horizon - 1.0) * spec.mesh))
    times = 1.0 + np.arange(count + 1) / spec.mesh
    return times[times < horizon]


def generate_simple_bm_dsi(spec, rng=None):
    """X(t) = lam^{n(H - 1/2)} B(t) + g(t) for t in [lam^{n-1}, lam^n), n = 1..M.

    Sampled at t = 1 + j/mesh over [1, lam^M) from one Brownian path.
    """
    rng = np.random.default_rng(spec.seed) if rng is None else rng
    times = simple_bm_dsi_times(spec)
    steps = np.empty(times.size)
    steps[0] = rng.standard_normal()  # B(1) ~ N(0, 1)
    steps[1:] = rng.standard_normal(times.size - 1) * np.sqrt(1.0 / spec.mesh)
    brownian = np.cumsum(steps)
    interval = spec.partition.segment_index(times) + 1
    values = spec.lam ** (interval * (spec.hurst - 0.5)) * brownian
    if spec.drift is not None:
        try:
            values = values + spec.drift(times)
        except DriftDomainError as e:
            raise DriftDomainError(
                f"drift does not cover [1, {spec.lam ** spec.M:g}): {e.message}", stage="simulate"
            ) from e
    return TimeSeries(times, values)


def simple_bm_dsi_covariance(s, t, hurst, lam):
    """Cov(X(t), X(s)) = lam^{(n+m)(H - 1/2)} min(s, t) with s in I_m, t in I_n."""
    s, t = min(s, t), max(s, t)
    m = int(np.floor(np.log(s) / np.log(lam) + 1e-12)) + 1
    n = int(np.floor(np.log(t) / np.log(lam) + 1e-12)) + 1
    return lam ** ((n + m) * (hurst - 0.5)) * s


def add_drift(x, drift):
    """X(t) = Y(t) + g(t); times unchanged."""
    return x.with_values(x.values + drift(x.times))
