"""
Monte Carlo comparison of Hurst estimators on exact fBm paths.

Every (H, replication) pair draws one path from a generator derived from
(master seed, replication index); all methods are applied to that same path,
so method comparisons are paired. Results land in a fixed-shape array before
aggregation, which makes the table independent of the thread schedule.
"""
import logging
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import List, Optional

import numpy as np
import pandas as pd
from dotenv import dotenv_values
from pydantic import BaseModel, Field, ValidationError, field_validator

from dsi_hurst.baselines import ESTIMATORS
from dsi_hurst.errors import BenchmarkError, ConfigError, DsiHurstError
from dsi_hurst.hsssi import estimate_hsssi
from dsi_hurst.series import TimeSeries
from dsi_hurst.sim import FbmSpec, generate_fgn, replication_rng

logger = logging.getLogger(__name__)

ALL_METHODS = ("FA", "DFA", "DMA", "diff1", "diff2")
DEFAULT_GRID = tuple(round(0.1 * i, 1) for i in range(1, 10))
MAX_FAILURE_SHARE = 0.01
TABLE_COLUMNS = ["method", "H", "mse", "bias", "variance", "reps", "failures"]


class BenchConfig(BaseModel):
    n: int = Field(10000, ge=60, description="Samples per simulated path.")
    reps: int = Field(500, ge=10, description="Replications per Hurst value.")
    hurst_grid: List[float] = Field(list(DEFAULT_GRID), min_length=1, description="Hurst values in (0, 1).")
    methods: List[str] = Field(list(ALL_METHODS), min_length=1, description="Subset of FA, DFA, DMA, diff1, diff2.")
    seed: int = Field(0, ge=0, description="Master seed.")
    drift_slope: Optional[float] = Field(None, description="Planted linear drift per step added to every path.")
    detrend: bool = Field(True, description="Remove the global regression line before diff1/diff2.")
    workers: int = Field(1, ge=1, description="Threads running replications.")

    @field_validator("hurst_grid")
    @classmethod
    def _open_unit_interval(cls, grid):
        bad = [h for h in grid if not 0.0 < h < 1.0]
        if bad:
            raise ValueError(f"Hurst values must lie in (0, 1): {bad}")
        return grid

    @field_validator("methods")
    @classmethod
    def _known_methods(cls, methods):
        bad = [m for m in methods if m not in ALL_METHODS]
        if bad:
            raise ValueError(f"unknown methods {bad}; choose from {list(ALL_METHODS)}")
        return methods


@dataclass(frozen=True)
class MseTable:
    frame: pd.DataFrame

    def long_format(self):
        """(method, H, mse) rows for plotting."""
        return self.frame[["method", "H", "mse"]].copy()

    def cell(self, method, hurst):
        rows = self.frame[(self.frame["method"] == method) & np.isclose(self.frame["H"], hurst)]
        return rows.iloc[0]

    def mse(self, method, hurst):
        return float(self.cell(method, hurst)["mse"])


def _estimate(method, path, increments, detrend):
    if method == "diff1":
        return estimate_hsssi(path, r=1, detrend=detrend).hurst
    if method == "diff2":
        return estimate_hsssi(path, r=2, detrend=detrend).hurst
    return ESTIMATORS[method](increments).hurst


def _replicate(cfg, hurst, index):
    rng = replication_rng(cfg.seed, index)
    increments = generate_fgn(FbmSpec(n=cfg.n, hurst=hurst), rng)
    if cfg.drift_slope:
        increments = increments + cfg.drift_slope
    path = TimeSeries.from_values(np.cumsum(increments))
    out = np.full(len(cfg.methods), np.nan)
    for j, method in enumerate(cfg.methods):
        try:
            out[j] = _estimate(method, path, increments, cfg.detrend)
        except DsiHurstError as e:
            logger.warning("%s failed on replication %d at H=%.2f: %s", method, index, hurst, e)
    return out


def _aggregate(method, hurst, estimates):
    valid = estimates[np.isfinite(estimates)]
    failures = estimates.size - valid.size
    if valid.size == 0:
        return [method, hurst, np.nan, np.nan, np.nan, 0, failures]
    errors = valid - hurst
    bias = float(np.mean(errors))
    variance = float(np.mean((valid - valid.mean()) ** 2))
    mse = float(np.mean(errors ** 2))
    return [method, hurst, mse, bias, variance, int(valid.size), int(failures)]


def run_benchmark(cfg):
    """MSE, bias and variance of every method at every Hurst value."""
    rows = []
    bad_cells = []
    with ThreadPoolExecutor(max_workers=cfg.workers) as pool:
        for hurst in cfg.hurst_grid:
            estimates = np.vstack(list(pool.map(
                lambda i, h=hurst: _replicate(cfg, h, i), range(cfg.reps)
            )))
            for j, method in enumerate(cfg.methods):
                row = _aggregate(method, hurst, estimates[:, j])
                if row[-1] > MAX_FAILURE_SHARE * cfg.reps:
                    bad_cells.append((method, hurst, row[-1]))
                rows.append(row)
            logger.info("H=%.2f done (%d replications)", hurst, cfg.reps)
    if bad_cells:
        detail = ", ".join(f"{m} at H={h:g}: {f}/{cfg.reps}" for m, h, f in bad_cells)
        raise BenchmarkError(f"degenerate estimates on more than 1% of replications ({detail})", cells=bad_cells)
    return MseTable(pd.DataFrame(rows, columns=TABLE_COLUMNS))


def best_methods(table):
    """Least-MSE method for each Hurst value."""
    frame = table.frame
    best = frame.loc[frame.groupby("H")["mse"].idxmin(), ["H", "method", "mse"]]
    return best.reset_index(drop=True)


def _parse_value(key, raw):
    if key in ("hurst_grid", "methods"):
        items = [item.strip() for item in raw.split(",") if item.strip()]
        return [float(item) for item in items] if key == "hurst_grid" else items
    if key == "detrend":
        lowered = raw.strip().lower()
        if lowered in ("on", "true", "yes", "1"):
            return True
        if lowered in ("off", "false", "no", "0"):
            return False
        raise ValueError(f"detrend must be on/off, got {raw!r}")
    if key == "drift_slope" and raw.strip().lower() in ("", "none"):
        return None
    return raw.strip()


def load_bench_config(path, **overrides):
    """BenchConfig from a flat key=value file; ``#`` starts a comment and values may be quoted."""
    if not os.path.isfile(path):
        raise ConfigError(f"cannot read benchmark config {path}: no such file")
    fields = set(BenchConfig.model_fields)
    values = {}
    for key, raw in dotenv_values(path, interpolate=False).items():
        if key not in fields:
            raise ConfigError(f"{path}: unknown key {key!r}")
        if raw is None:
            raise ConfigError(f"{path}: expected {key}=value")
        try:
            values[key] = _parse_value(key, raw)
        except ValueError as e:
            raise ConfigError(f"{path}: {e}") from e
    values.update({k: v for k, v in overrides.items() if v is not None})
    try:
        return BenchConfig(**values)
    except ValidationError as e:
        raise ConfigError(f"invalid benchmark config {path}: {e}") from e
