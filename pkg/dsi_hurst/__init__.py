"""Scale and Hurst estimation for discrete scale invariant and self-similar series with linear drift."""
from dsi_hurst.baselines import FluctuationCurve, dfa, dma, fa, fit_loglog_slope, profile
from dsi_hurst.bench import BenchConfig, MseTable, run_benchmark
from dsi_hurst.detrend import eliminate_drift, fit_global_drift, fit_piecewise_drift
from dsi_hurst.dsi import (
    DsiEstimate,
    compare_drift_modes,
    dsi_pipeline,
    estimate_dsi_hurst,
    interval_increment_variances,
)
from dsi_hurst.errors import DsiHurstError
from dsi_hurst.hsssi import HsssiEstimate, estimate_hsssi, kstar, variance_ratio_pair
from dsi_hurst.scalegrid import (
    SamplingGrid,
    ScaleEstimate,
    detect_scale_intervals,
    equally_spaced_grid,
    estimate_scale,
    geometric_grid,
    resample_on_grid,
)
from dsi_hurst.series import (
    DiffOrder,
    DriftSegment,
    PiecewiseLinearDrift,
    ScalePartition,
    TimeSeries,
    difference,
    ols_line,
    sample_variance,
    subsample,
    window,
)
from dsi_hurst.sim import (
    FbmSpec,
    SimpleBmDsiSpec,
    add_drift,
    generate_fbm,
    generate_fgn,
    generate_simple_bm_dsi,
)

__version__ = "0.1.0"
