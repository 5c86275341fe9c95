import functools
import logging

import click
import numpy as np
import pandas as pd
from pydantic import ValidationError

from dsi_hurst.baselines import ESTIMATORS
from dsi_hurst.bench import best_methods, load_bench_config, run_benchmark
from dsi_hurst.config import configure_logging, get_settings
from dsi_hurst.detrend import eliminate_drift, fit_global_drift, fit_piecewise_drift
from dsi_hurst.dsi import BOUNDARIES, DRIFT_MODES, compare_drift_modes, dsi_pipeline
from dsi_hurst.errors import DsiHurstError, pipeline_stage
from dsi_hurst.hsssi import estimate_hsssi
from dsi_hurst.scalegrid import detect_scale_intervals, estimate_scale
from dsi_hurst.series import PiecewiseLinearDrift, ScalePartition, TimeSeries, window
from dsi_hurst.series_io import parse_series_csv, write_series_csv, write_table_csv
from dsi_hurst.sim import (
    FbmSpec,
    SimpleBmDsiSpec,
    generate_fbm,
    generate_fgn,
    generate_simple_bm_dsi,
)

logger = logging.getLogger(__name__)


def reports_errors(func):
    """Library errors exit with status 1, invalid parameter values with 2."""
    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except DsiHurstError as e:
            raise click.ClickException(str(e)) from e
        except ValidationError as e:
            raise click.UsageError(str(e)) from e
    return wrapper


def series_input(func):
    @click.argument("path", type=click.Path(exists=True, dir_okay=False))
    @click.option("--time-col", default=None, help="Time column (name or index); default: row number 1..n.")
    @click.option("--value-col", default="-1", show_default=True, help="Value column (name or index).")
    @click.option("--header/--no-header", default=True, show_default=True, help="First row is a header.")
    @functools.wraps(func)
    def wrapper(path, time_col, value_col, header, **kwargs):
        try:
            with pipeline_stage("ingest"):
                series, skipped = parse_series_csv(path, time_col=time_col, value_col=value_col, header=header)
        except DsiHurstError as e:
            raise click.ClickException(str(e)) from e
        if skipped:
            click.echo(f"skipped {skipped} row(s) in {path}", err=True)
        return func(series, **kwargs)
    return wrapper


def parse_floats(raw):
    if raw is None:
        return None
    try:
        return [float(item) for item in raw.split(",") if item.strip()]
    except ValueError:
        raise click.BadParameter(f"expected comma-separated numbers, got {raw!r}") from None


def parse_intervals(raw):
    if raw is None or str(raw).lower() == "auto":
        return None
    try:
        return int(raw)
    except ValueError:
        raise click.BadParameter(f"expected an integer or 'auto', got {raw!r}") from None


def show(frame):
    click.echo(frame.to_string(index=False, float_format=lambda v: f"{v:.4f}", na_rep=""))


@click.group()
@click.option("--log-level", default=None, help="Override DSI_HURST_LOG_LEVEL.")
@reports_errors
def cli(log_level):
    """Scale and Hurst estimation for DSI and self-similar series with drift."""
    settings = get_settings()
    configure_logging((log_level or settings.log_level).upper())


@cli.group()
def simulate():
    """Write simulated series as time,value CSV."""


@simulate.command("fgn")
@click.option("--n", "n", type=int, required=True)
@click.option("--hurst", type=float, required=True)
@click.option("--sigma", type=float, default=1.0, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), required=True)
@reports_errors
def simulate_fgn(n, hurst, sigma, seed, out):
    values = generate_fgn(FbmSpec(n=n, hurst=hurst, sigma=sigma, seed=seed))
    write_series_csv(TimeSeries.from_values(values), out)


@simulate.command("fbm")
@click.option("--n", "n", type=int, required=True)
@click.option("--hurst", type=float, required=True)
@click.option("--sigma", type=float, default=1.0, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), required=True)
@reports_errors
def simulate_fbm(n, hurst, sigma, seed, out):
    write_series_csv(generate_fbm(FbmSpec(n=n, hurst=hurst, sigma=sigma, seed=seed)), out)


@simulate.command("dsi")
@click.option("--hurst", type=float, required=True)
@click.option("--lam", type=float, required=True, help="Scale lambda > 1.")
@click.option("--intervals", "M", type=int, required=True, help="Number of scale intervals.")
@click.option("--mesh", type=int, default=64, show_default=True, help="Samples per unit time.")
@click.option("--drift", multiple=True, help="ALPHA,BETA for one interval; repeat once per interval.")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), required=True)
@reports_errors
def simulate_dsi(hurst, lam, M, mesh, drift, seed, out):
    spec = SimpleBmDsiSpec(hurst=hurst, lam=lam, M=M, mesh=mesh, seed=seed)
    if drift:
        pairs = [parse_floats(item) for item in drift]
        if any(len(pair) != 2 for pair in pairs):
            raise click.BadParameter("each --drift takes ALPHA,BETA")
        spec = spec.model_copy(update={"drift": PiecewiseLinearDrift.from_partition(spec.partition, pairs)})
    write_series_csv(generate_simple_bm_dsi(spec), out)


@cli.command()
@series_input
@click.option("--intervals", default="auto", show_default=True, help="Number of scale intervals or 'auto'.")
@click.option("--min-len", type=int, default=4, show_default=True)
@click.option("--penalty", type=float, default=1.0, show_default=True, help="Auto interval-count penalty factor.")
@click.option("--out", type=click.Path(dir_okay=False), help="Breakpoints CSV (index,a_i).")
@reports_errors
def detect(series, intervals, min_len, penalty, out):
    """Detect scale-interval breakpoints and estimate lambda."""
    with pipeline_stage("detect"):
        partition = detect_scale_intervals(series, M=parse_intervals(intervals), min_len=min_len, penalty=penalty)
    frame = pd.DataFrame({"index": np.arange(partition.breakpoints.size), "a_i": partition.breakpoints})
    show(frame)
    if partition.M >= 2:
        for orientation in ("forward", "backward"):
            scale = estimate_scale(partition, orientation)
            ratios = ", ".join(f"{r:.4f}" for r in scale.per_pair_ratios)
            click.echo(f"lambda ({orientation}): {scale.mean_ratio:.4f} [{ratios}]")
    if out:
        write_table_csv(frame, out)


@cli.command()
@series_input
@click.option("--mode", type=click.Choice(["global", "piecewise"]), default="piecewise", show_default=True)
@click.option("--breakpoints", help="Comma-separated a_0,...,a_M; bypasses detection.")
@click.option("--intervals", default="auto", show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), required=True, help="Residual series CSV.")
@click.option("--drift-out", type=click.Path(dir_okay=False), required=True, help="Drift segments CSV.")
@reports_errors
def detrend(series, mode, breakpoints, intervals, out, drift_out):
    """Fit and remove linear drift (one line, or one per scale interval)."""
    points = parse_floats(breakpoints)
    if mode == "global":
        if points:
            series = window(series, points[0], points[-1])
        with pipeline_stage("drift"):
            drift = fit_global_drift(series)
    else:
        with pipeline_stage("detect"):
            partition = ScalePartition(points) if points else detect_scale_intervals(
                series, M=parse_intervals(intervals))
            series = window(series, partition.breakpoints[0], partition.breakpoints[-1])
        with pipeline_stage("drift"):
            drift = fit_piecewise_drift(series, partition)
    frame = pd.DataFrame(
        [(s.start, s.end, s.alpha, s.beta) for s in drift.segments],
        columns=["start", "end", "alpha", "beta"],
    )
    show(frame)
    write_series_csv(eliminate_drift(series, drift), out)
    write_table_csv(frame, drift_out)


@cli.group()
def estimate():
    """Hurst estimators."""


def dsi_frame(result):
    est = result.estimate
    m = est.interval_variances.size
    return pd.DataFrame({
        "k": np.arange(1, m + 1),
        "S2": est.interval_variances,
        "mu_hat": np.concatenate([[np.nan], est.mu_hats]),
        "H": np.concatenate([[np.nan], est.hurst_per_interval]),
    })


@estimate.command("dsi")
@series_input
@click.option("--q", type=int, required=True, help="Equally spaced samples per scale interval.")
@click.option("--breakpoints", help="Comma-separated a_0,...,a_M; bypasses detection.")
@click.option("--intervals", default="auto", show_default=True)
@click.option("--order", type=click.IntRange(1, 2), default=1, show_default=True)
@click.option("--drift-mode", type=click.Choice(DRIFT_MODES + ("all",)), default="piecewise", show_default=True)
@click.option("--boundary", type=click.Choice(BOUNDARIES), default="within", show_default=True)
@click.option("--orientation", type=click.Choice(["auto", "forward", "backward"]), default="auto", show_default=True,
              help="Direction of the interval-length ratios; auto picks the one where intervals grow.")
@click.option("--per-pair-lambda", is_flag=True, help="Use the time-dependent lambda_i of each pair.")
@click.option("--out", type=click.Path(dir_okay=False), help="CSV k,S2,mu_hat,H.")
@reports_errors
def estimate_dsi(series, q, breakpoints, intervals, order, drift_mode, boundary, orientation,
                 per_pair_lambda, out):
    """Hurst estimates of a DSI series from per-interval increment variances."""
    options = dict(
        breakpoints=parse_floats(breakpoints), M=parse_intervals(intervals), r=order,
        boundary=boundary, orientation=orientation,
        lambda_mode="per_pair" if per_pair_lambda else "mean",
    )
    if drift_mode == "all":
        results = compare_drift_modes(series, q, **options)
    else:
        results = {drift_mode: dsi_pipeline(series, q, drift_mode=drift_mode, **options)}
    frames = []
    for mode, result in results.items():
        frame = dsi_frame(result)
        click.echo(f"drift mode: {mode}")
        show(frame)
        est = result.estimate
        click.echo(
            f"lambda={np.mean(est.lambda_used):.4f} H_mean={est.hurst_mean:.4f} "
            f"mu_mean={est.mu_mean:.4f} H(mu_mean)={est.hurst_from_mu_mean:.4f}"
        )
        frames.append(frame.assign(drift_mode=mode) if drift_mode == "all" else frame)
    if out:
        frame = pd.concat(frames, ignore_index=True)
        if drift_mode == "all":
            frame = frame[["drift_mode", "k", "S2", "mu_hat", "H"]]
        write_table_csv(frame, out)


@estimate.command("hsssi")
@series_input
@click.option("--order", type=click.IntRange(1, 2), default=1, show_default=True)
@click.option("--detrend", type=click.Choice(["on", "off"]), default="on", show_default=True)
@click.option("--all-terms", is_flag=True, help="Use all N - r unit differences for S2_{r,k,1}.")
@click.option("--out", type=click.Path(dir_okay=False), help="CSV k,ratio,H_k.")
@reports_errors
def estimate_hsssi_cmd(series, order, detrend, all_terms, out):
    """Variance-ratio Hurst estimate (diff1/diff2) of a self-similar series."""
    with pipeline_stage("estimate"):
        result = estimate_hsssi(series, r=order, detrend=detrend == "on", all_terms=all_terms)
    frame = pd.DataFrame({"k": result.strides, "ratio": result.ratios, "H_k": result.per_k_hurst})
    show(frame)
    click.echo(f"K*={result.K_star} H={result.hurst:.4f}")
    if out:
        write_table_csv(frame, out)


def fluctuation_command(method):
    @estimate.command(method.lower(), help=f"{method} fluctuation-function Hurst estimate.")
    @series_input
    @click.option("--levels", is_flag=True, help="Input holds levels (e.g. an fBm path); difference first.")
    @click.option("--scales", help="Comma-separated integer scales; default 12 geometric from 8 to N/4.")
    @click.option("--out", type=click.Path(dir_okay=False), help="CSV scale,F.")
    @reports_errors
    def command(series, levels, scales, out):
        increments = np.diff(series.values) if levels else series.values
        chosen = parse_floats(scales)
        with pipeline_stage("estimate"):
            curve = ESTIMATORS[method](increments, None if chosen is None else [int(s) for s in chosen])
        frame = pd.DataFrame({"scale": curve.scales, "F": curve.F})
        show(frame)
        click.echo(f"{method} H={curve.hurst:.4f}")
        if out:
            write_table_csv(frame, out)
    return command


for _method in ESTIMATORS:
    fluctuation_command(_method)


@cli.command()
@click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--workers", type=int, default=None, help="Override the config/DSI_HURST_WORKERS thread count.")
@click.option("--out", type=click.Path(dir_okay=False), default="bench.csv", show_default=True)
@click.option("--plot-out", type=click.Path(dir_okay=False), default="bench_plot.dat", show_default=True,
              help="Whitespace-separated method H mse rows for gnuplot.")
@reports_errors
def benchmark(config_path, workers, out, plot_out):
    """Monte Carlo MSE of FA, DFA, DMA, diff1 and diff2 on exact fBm."""
    cfg = load_bench_config(config_path, workers=workers)
    if "workers" not in cfg.model_fields_set:
        cfg = cfg.model_copy(update={"workers": get_settings().workers})
    table = run_benchmark(cfg)
    show(table.frame)
    click.echo("best method per H:")
    show(best_methods(table))
    write_table_csv(table.frame[["method", "H", "mse", "bias", "variance", "reps"]], out)
    table.long_format().to_csv(plot_out, sep=" ", index=False, header=False, float_format="%.17g")
