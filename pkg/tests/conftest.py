import numpy as np
import pytest

from dsi_hurst.series import PiecewiseLinearDrift, ScalePartition, TimeSeries
from dsi_hurst.sim import SimpleBmDsiSpec


@pytest.fixture
def rng():
    return np.random.default_rng(20240517)


@pytest.fixture
def dsi_partition():
    return ScalePartition([1.0, 2.0, 4.0, 8.0, 16.0])


@pytest.fixture
def dsi_spec():
    """lambda = 2, four intervals, grid q = 64 lands on sample times."""
    return SimpleBmDsiSpec(hurst=0.7, lam=2.0, M=4, mesh=64, seed=11)


@pytest.fixture
def jump_drift(dsi_partition):
    return PiecewiseLinearDrift.from_partition(
        dsi_partition, [(0.0, 0.0), (50.0, 0.0), (0.0, 0.0), (50.0, 0.0)]
    )


def piecewise_quadratic(noise_std=0.0, rng=None):
    """Three parabolas on t = 1..120 offset by large jumps; planted cuts at samples 40 and 80."""
    t = np.arange(1.0, 121.0)
    values = np.empty_like(t)
    values[:40] = 0.05 * (t[:40] - 20) ** 2
    values[40:80] = 1000.0 + 30.0 - 0.08 * (t[40:80] - 60) ** 2
    values[80:] = 2000.0 + 0.1 * (t[80:] - 100) ** 2 + 5.0
    if noise_std:
        values = values + rng.normal(0.0, noise_std, t.size)
    return TimeSeries(t, values)
