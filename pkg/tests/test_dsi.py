import numpy as np
import pytest

from dsi_hurst.dsi import (
    compare_drift_modes,
    dsi_pipeline,
    estimate_dsi_hurst,
    interval_increment_variances,
)
from dsi_hurst.errors import DegenerateVarianceError, InvalidInputError, SeriesTooShortError
from dsi_hurst.scalegrid import equally_spaced_grid, resample_on_grid
from dsi_hurst.series import PiecewiseLinearDrift, ScalePartition, TimeSeries
from dsi_hurst.sim import SimpleBmDsiSpec, add_drift, generate_simple_bm_dsi, replication_rng


def grid_series(grid, values):
    return TimeSeries(grid.points, values)


def test_linear_intervals_have_zero_variance():
    grid = equally_spaced_grid(ScalePartition([0.0, 4.0, 8.0]), 4)
    values = np.where(grid.points < 4, 1.0 + 2.0 * grid.points, -3.0 * grid.points)
    variances = interval_increment_variances(grid_series(grid, values), grid)
    np.testing.assert_allclose(variances, 0.0, atol=1e-24)
    with pytest.raises(DegenerateVarianceError) as info:
        estimate_dsi_hurst(variances, 2.0)
    assert info.value.where == 1


def test_homologous_doubling_quadruples_variance(rng):
    grid = equally_spaced_grid(ScalePartition([0.0, 4.0, 8.0, 12.0]), 4)
    base = rng.normal(size=4)
    values = np.concatenate([base, 2 * base, 4 * base])
    variances = interval_increment_variances(grid_series(grid, values), grid)
    np.testing.assert_allclose(variances[1:] / variances[:-1], 4.0)
    est = estimate_dsi_hurst(variances, 2.0)
    np.testing.assert_allclose(est.hurst_per_interval, 1.0)


def brute_force_variances(values, q, extra):
    out = []
    for k in range(len(values) // q):
        block = values[k * q:(k + 1) * q + extra]
        diffs = [block[i + 1] - block[i] for i in range(len(block) - 1)]
        mean = sum(diffs) / len(diffs)
        out.append(sum((d - mean) ** 2 for d in diffs) / len(diffs))
    return np.array(out)


def test_matches_direct_formula(rng):
    grid = equally_spaced_grid(ScalePartition([0.0, 1.0, 3.0, 7.0]), 4)
    values = rng.normal(size=12)
    within = interval_increment_variances(grid_series(grid, values), grid)
    np.testing.assert_allclose(within, brute_force_variances(values, 4, 0), rtol=1e-12)

    end_value = rng.normal()
    crossed = TimeSeries(np.append(grid.points, 7.0), np.append(values, end_value))
    cross = interval_increment_variances(crossed, grid, boundary="cross")
    padded = list(values) + [end_value]
    expected = [brute_force_variances(padded[k * 4:k * 4 + 5], 4, 1)[0] for k in range(3)]
    np.testing.assert_allclose(cross, expected, rtol=1e-12)


def test_second_order_uses_q_minus_two_terms(rng):
    grid = equally_spaced_grid(ScalePartition([0.0, 1.0, 2.0]), 5)
    values = rng.normal(size=10)
    variances = interval_increment_variances(grid_series(grid, values), grid, r=2)
    expected = [np.var(np.diff(values[k * 5:(k + 1) * 5], n=2)) for k in range(2)]
    np.testing.assert_allclose(variances, expected)


def test_variance_input_checks():
    grid = equally_spaced_grid(ScalePartition([0.0, 1.0, 2.0]), 3)
    series = grid_series(grid, np.arange(6.0) ** 2)
    with pytest.raises(InvalidInputError):
        interval_increment_variances(series, grid, boundary="cross")
    with pytest.raises(SeriesTooShortError):
        interval_increment_variances(series, grid, r=2)
    with pytest.raises(InvalidInputError):
        interval_increment_variances(TimeSeries.from_values(np.arange(6.0)), grid)


def test_estimate_closed_forms():
    est = estimate_dsi_hurst([1.0, 4.0], 2.0)
    np.testing.assert_allclose(est.mu_hats, [4.0])
    np.testing.assert_allclose(est.hurst_per_interval, [1.0])
    assert est.hurst_mean == pytest.approx(1.0)
    flat = estimate_dsi_hurst([1.0, 1.0, 1.0], 3.7)
    np.testing.assert_allclose(flat.hurst_per_interval, 0.0)


def test_estimate_mean_ratio_aggregate():
    est = estimate_dsi_hurst([1.0, 2.0, 8.0], 2.0)
    assert est.mu_mean == pytest.approx(3.0)
    assert est.hurst_from_mu_mean == pytest.approx(np.log(3.0) / (2 * np.log(2.0)))
    assert est.hurst_mean == pytest.approx(np.mean(est.hurst_per_interval))


def test_estimate_per_pair_lambda():
    est = estimate_dsi_hurst([1.0, 4.0, 36.0], [2.0, 3.0])
    np.testing.assert_allclose(est.hurst_per_interval, [1.0, 1.0])
    np.testing.assert_array_equal(est.lambda_used, [2.0, 3.0])


def test_estimate_rejects_bad_scale():
    with pytest.raises(InvalidInputError):
        estimate_dsi_hurst([1.0, 2.0], 1.0)
    with pytest.raises(InvalidInputError):
        estimate_dsi_hurst([1.0], 2.0)


def test_pipeline_scaling_and_translation(dsi_spec, dsi_partition):
    x = generate_simple_bm_dsi(dsi_spec)
    base = dsi_pipeline(x, 64, breakpoints=dsi_partition).estimate
    scaled = dsi_pipeline(x.with_values(3.0 * x.values + 11.0), 64, breakpoints=dsi_partition).estimate
    np.testing.assert_allclose(scaled.interval_variances, 9.0 * base.interval_variances, rtol=1e-9)
    np.testing.assert_allclose(scaled.mu_hats, base.mu_hats, rtol=1e-9)
    np.testing.assert_allclose(scaled.hurst_per_interval, base.hurst_per_interval, atol=1e-9)


def test_pipeline_ignores_aligned_piecewise_drift(dsi_spec, dsi_partition):
    x = generate_simple_bm_dsi(dsi_spec)
    drift = PiecewiseLinearDrift.from_partition(
        dsi_partition, [(3.0, 2.0), (-1.0, 0.5), (10.0, -1.5), (4.0, 0.25)]
    )
    clean = dsi_pipeline(x, 64, breakpoints=dsi_partition).estimate
    drifted = dsi_pipeline(add_drift(x, drift), 64, breakpoints=dsi_partition).estimate
    np.testing.assert_allclose(drifted.hurst_per_interval, clean.hurst_per_interval, atol=1e-8)


def test_within_boundary_drift_modes_agree(dsi_spec, dsi_partition):
    x = generate_simple_bm_dsi(dsi_spec)
    results = compare_drift_modes(x, 64, breakpoints=dsi_partition)
    assert set(results) == {"none", "global", "piecewise"}
    reference = results["none"].estimate.hurst_per_interval
    for result in results.values():
        np.testing.assert_allclose(result.estimate.hurst_per_interval, reference, atol=1e-8)
    assert results["none"].drift is None
    assert len(results["piecewise"].drift.segments) == 4


def test_cross_boundary_drift_jumps_bias_undetrended(dsi_spec, dsi_partition, jump_drift):
    x = add_drift(generate_simple_bm_dsi(dsi_spec), jump_drift)
    none = dsi_pipeline(x, 64, breakpoints=dsi_partition, drift_mode="none", boundary="cross")
    piecewise = dsi_pipeline(x, 64, breakpoints=dsi_partition, drift_mode="piecewise", boundary="cross")
    # each jump adds about 50^2 / 64 to the variance of the interval it leaves
    assert np.all(none.estimate.interval_variances[:3] > 30.0)
    assert none.estimate.hurst_mean < 0.0
    assert none.estimate.hurst_mean < piecewise.estimate.hurst_mean - 0.5


def test_pipeline_diagnostics(dsi_spec, dsi_partition):
    result = dsi_pipeline(generate_simple_bm_dsi(dsi_spec), 64, breakpoints=[1, 2, 4, 8, 16],
                          lambda_mode="per_pair")
    np.testing.assert_array_equal(result.partition.breakpoints, dsi_partition.breakpoints)
    assert result.scale_forward.mean_ratio == pytest.approx(2.0)
    assert result.scale_backward.mean_ratio == pytest.approx(0.5)
    assert result.boundary == "within"
    assert result.q == 64


SHRINKING_BREAKPOINTS = [1854, 2186, 2466, 2671, 2785]


def test_pipeline_reads_shrinking_intervals_backward(rng):
    x = TimeSeries.from_values(np.cumsum(rng.normal(size=3168)))
    result = dsi_pipeline(x, 64, breakpoints=SHRINKING_BREAKPOINTS)
    assert result.orientation == "backward"
    assert result.estimate.lambda_used == pytest.approx([1.4499] * 3, abs=1e-4)
    explicit = dsi_pipeline(x, 64, breakpoints=SHRINKING_BREAKPOINTS, orientation="backward")
    np.testing.assert_array_equal(explicit.estimate.hurst_per_interval, result.estimate.hurst_per_interval)


def test_pipeline_forward_on_shrinking_intervals_names_the_fix(rng):
    x = TimeSeries.from_values(np.cumsum(rng.normal(size=3168)))
    with pytest.raises(InvalidInputError, match="use orientation 'backward'") as info:
        dsi_pipeline(x, 64, breakpoints=SHRINKING_BREAKPOINTS, orientation="forward")
    assert info.value.stage == "detect"
    with pytest.raises(InvalidInputError):
        dsi_pipeline(x, 64, breakpoints=SHRINKING_BREAKPOINTS, orientation="sideways")


def test_pipeline_growing_intervals_read_forward(dsi_spec, dsi_partition):
    result = dsi_pipeline(generate_simple_bm_dsi(dsi_spec), 64, breakpoints=dsi_partition)
    assert result.orientation == "forward"
    with pytest.raises(InvalidInputError, match="use orientation 'forward'"):
        dsi_pipeline(generate_simple_bm_dsi(dsi_spec), 64, breakpoints=dsi_partition, orientation="backward")


def test_pipeline_errors_carry_stage(dsi_spec):
    x = generate_simple_bm_dsi(dsi_spec)
    with pytest.raises(InvalidInputError) as info:
        dsi_pipeline(x, 64, breakpoints=[1, 16])
    assert info.value.stage == "detect"
    with pytest.raises(SeriesTooShortError) as info:
        dsi_pipeline(x, 2, breakpoints=[1, 2, 4])
    assert info.value.stage == "variance"
    flat = TimeSeries(x.times, np.zeros(len(x)))
    with pytest.raises(DegenerateVarianceError) as info:
        dsi_pipeline(flat, 64, breakpoints=[1, 2, 4], drift_mode="none")
    assert info.value.stage == "estimate"
    with pytest.raises(InvalidInputError):
        dsi_pipeline(x, 64, breakpoints=[1, 2, 4], drift_mode="quadratic")


def test_pipeline_on_detected_partition(rng):
    t = np.arange(1.0, 141.0)
    values = np.concatenate([
        0.05 * (t[:20] - 10) ** 2,
        500.0 - 0.01 * (t[20:60] - 40) ** 2,
        1000.0 + 0.005 * (t[60:] - 100) ** 2,
    ]) + rng.normal(size=t.size)
    result = dsi_pipeline(TimeSeries(t, values), 16, M=3)
    assert result.partition.M == 3
    np.testing.assert_allclose(result.partition.breakpoints, [1, 21, 61, 140], atol=2)
    assert result.estimate.hurst_per_interval.size == 2


def mean_recovered_hurst(hurst, reps, drift=None):
    partition = ScalePartition([1.0, 2.0, 4.0, 8.0, 16.0])
    spec = SimpleBmDsiSpec(hurst=hurst, lam=2.0, M=4, mesh=64, drift=drift)
    estimates = [
        dsi_pipeline(generate_simple_bm_dsi(spec, replication_rng(1, i)), 64, breakpoints=partition).estimate.hurst_mean
        for i in range(reps)
    ]
    return float(np.mean(estimates))


@pytest.mark.parametrize("hurst", [0.3, 0.7])
def test_recovers_planted_hurst(hurst, jump_drift):
    assert mean_recovered_hurst(hurst, 40, jump_drift) == pytest.approx(hurst, abs=0.1)


@pytest.mark.slow
@pytest.mark.parametrize("hurst", [0.3, 0.5, 0.7])
def test_recovers_planted_hurst_full(hurst, jump_drift):
    assert mean_recovered_hurst(hurst, 200, jump_drift) == pytest.approx(hurst, abs=0.1)


def test_resampled_grid_hits_sample_times(dsi_spec, dsi_partition):
    x = generate_simple_bm_dsi(dsi_spec)
    grid = equally_spaced_grid(dsi_partition, 64)
    sampled = resample_on_grid(x, grid)
    idx = np.rint((grid.points - 1.0) * 64).astype(int)
    np.testing.assert_array_equal(sampled.values, x.values[idx])
