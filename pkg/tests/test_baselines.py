import numpy as np
import pytest

from dsi_hurst.baselines import (
    ESTIMATORS,
    default_scales,
    dfa,
    dma,
    fa,
    fit_loglog_slope,
    profile,
)
from dsi_hurst.errors import DegenerateVarianceError, InvalidInputError, SeriesTooShortError
from dsi_hurst.sim import FbmSpec, generate_fgn, replication_rng


def fgn_paths(hurst, count, n=4096, seed=12):
    spec = FbmSpec(n=n, hurst=hurst)
    return [generate_fgn(spec, replication_rng(seed, i)) for i in range(count)]


def test_profile_is_centered_cumsum():
    y = profile([1.0, 2.0, 3.0, 6.0])
    np.testing.assert_allclose(y, [-2.0, -3.0, -3.0, 0.0])
    np.testing.assert_array_equal(profile([1.0, 1.0, 1.0]), [0.0, 0.0, 0.0])


def test_default_scales():
    scales = default_scales(4096)
    assert scales[0] == 8
    assert scales[-1] == 1024
    assert scales.size == 12
    assert np.all(np.diff(scales) > 0)
    with pytest.raises(SeriesTooShortError):
        default_scales(20)


def test_loglog_slope_of_power_law():
    s = np.array([8, 16, 32, 64, 128])
    assert fit_loglog_slope(s, 3.0 * s ** 0.7) == pytest.approx(0.7)
    with pytest.raises(DegenerateVarianceError) as info:
        fit_loglog_slope(s, np.array([1.0, 2.0, 0.0, 4.0, 5.0]))
    assert info.value.where == 32.0


def test_dfa_quadratic_profile_closed_form():
    # increments 2t give a profile t^2 + linear; a line leaves (s^2-1)(s^2-4)/180 per window
    x = 2.0 * np.arange(1.0, 1025.0)
    curve = dfa(x)
    s = curve.scales.astype(float)
    np.testing.assert_allclose(curve.F, np.sqrt((s ** 2 - 1) * (s ** 2 - 4) / 180.0), rtol=1e-8)


def test_fa_matches_direct_sum(rng):
    x = rng.normal(size=64)
    y = np.cumsum(x - x.mean())
    curve = fa(x, scales=[2, 5, 16])
    for s, F in zip([2, 5, 16], curve.F):
        direct = np.mean([(y[t + s] - y[t]) ** 2 for t in range(64 - s)])
        assert F == pytest.approx(np.sqrt(direct))


def test_dma_matches_direct_sum(rng):
    x = rng.normal(size=40)
    y = np.cumsum(x - x.mean())
    curve = dma(x, windows=[2, 3, 10])
    for w, F in zip([2, 3, 10], curve.F):
        residuals = [y[i] - np.mean(y[i - w + 1:i + 1]) for i in range(w - 1, 40)]
        assert F == pytest.approx(np.sqrt(np.mean(np.square(residuals))))


def test_dfa_uses_windows_from_both_ends(rng):
    x = rng.normal(size=50)
    y = np.cumsum(x - x.mean())
    curve = dfa(x, scales=[12])
    u = np.arange(12.0)
    windows = [y[i * 12:(i + 1) * 12] for i in range(4)] + [y[2 + i * 12:2 + (i + 1) * 12] for i in range(4)]
    residual_ms = []
    for w in windows:
        coef = np.polyfit(u, w, 1)
        residual_ms.append(np.mean((w - np.polyval(coef, u)) ** 2))
    assert curve.F[0] == pytest.approx(np.sqrt(np.mean(residual_ms)))


def test_scale_validation(rng):
    x = rng.normal(size=100)
    with pytest.raises(InvalidInputError):
        dfa(x, scales=[2, 10])
    with pytest.raises(InvalidInputError):
        fa(x, scales=[30])
    with pytest.raises(InvalidInputError):
        dfa(x, poly_order=2)


@pytest.mark.parametrize("method", sorted(ESTIMATORS))
def test_white_noise_gives_one_half(method):
    rng = np.random.default_rng(99)
    estimates = [ESTIMATORS[method](rng.standard_normal(4096)).hurst for _ in range(20)]
    assert np.mean(estimates) == pytest.approx(0.5, abs=0.05)
    assert ESTIMATORS[method](rng.standard_normal(4096)).method == method


def test_dma_on_antipersistent_noise():
    estimates = [dma(x).hurst for x in fgn_paths(0.2, 10)]
    assert np.mean(estimates) == pytest.approx(0.2, abs=0.07)


def test_fa_growth_ratio_for_persistent_noise():
    ratios = []
    for x in fgn_paths(0.8, 10):
        curve = fa(x, scales=[16, 32])
        ratios.append(curve.F[1] / curve.F[0])
    assert np.mean(ratios) == pytest.approx(2 ** 0.8, rel=0.05)


def test_dfa_resists_linear_trend_where_fa_does_not():
    trend = 5e-4 * np.arange(4096)
    fa_shift, dfa_clean, dfa_trend = [], [], []
    for x in fgn_paths(0.8, 4):
        fa_shift.append(fa(x + trend).hurst - fa(x).hurst)
        dfa_clean.append(dfa(x).hurst)
        dfa_trend.append(dfa(x + trend).hurst)
    assert np.mean(fa_shift) > 0.05
    assert np.max(np.abs(np.subtract(dfa_trend, dfa_clean))) < 0.02
    assert np.mean(dfa_trend) == pytest.approx(0.8, abs=0.07)


@pytest.mark.parametrize("method", sorted(ESTIMATORS))
def test_constant_increments_are_degenerate(method):
    with pytest.raises(DegenerateVarianceError):
        ESTIMATORS[method](np.full(256, 2.0))


@pytest.mark.parametrize("method", sorted(ESTIMATORS))
def test_scale_invariance(method, rng):
    x = rng.normal(size=1024)
    assert ESTIMATORS[method](7.5 * x).hurst == pytest.approx(ESTIMATORS[method](x).hurst, abs=1e-10)
