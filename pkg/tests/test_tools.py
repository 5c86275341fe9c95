import numpy as np
import pytest

pytest.importorskip("agency_swarm")

from tools.dsi_analyzer.DriftEliminationTool import DriftEliminationTool  # noqa: E402
from tools.dsi_analyzer.DsiHurstTool import DsiHurstTool  # noqa: E402
from tools.dsi_analyzer.ScaleIntervalTool import ScaleIntervalTool  # noqa: E402
from tools.hurst_estimators.BenchmarkTool import BenchmarkTool  # noqa: E402
from tools.hurst_estimators.FluctuationHurstTool import FluctuationHurstTool  # noqa: E402
from tools.hurst_estimators.HsssiHurstTool import HsssiHurstTool  # noqa: E402
from tools.simulation.DsiSimulationTool import DsiSimulationTool  # noqa: E402
from tools.simulation.FbmSimulationTool import FbmSimulationTool  # noqa: E402

from dsi_hurst.sim import SimpleBmDsiSpec, generate_simple_bm_dsi  # noqa: E402
from tests.conftest import piecewise_quadratic  # noqa: E402


def test_fbm_simulation_report():
    report = FbmSimulationTool(n=128, hurst=0.5, seed=1, increments=True).run()
    assert report.startswith("Simulated fGn")
    values = report.strip().splitlines()[-1].split(",")
    assert len(values) == 128


def test_dsi_simulation_report():
    report = DsiSimulationTool(hurst=0.7, lam=2.0, intervals=3, mesh=8, seed=2).run()
    assert "Error" not in report


def test_scale_interval_report():
    series = piecewise_quadratic()
    report = ScaleIntervalTool(values=series.values.tolist(), intervals=3).run()
    assert "Breakpoints: 1, 41, 81, 120" in report
    assert "Lambda (backward)" in report


def test_drift_elimination_report():
    t = np.arange(1.0, 61.0)
    values = np.where(t < 30, 3 + 2 * t, 10 - 0.5 * t)
    report = DriftEliminationTool(values=values.tolist(), breakpoints=[1, 30, 60]).run()
    assert "slope=2" in report
    assert "slope=-0.5" in report


def test_dsi_hurst_report_and_errors():
    series = generate_simple_bm_dsi(SimpleBmDsiSpec(hurst=0.7, lam=2.0, M=4, mesh=16, seed=3))
    report = DsiHurstTool(values=series.values.tolist(), times=series.times.tolist(), q=16,
                          breakpoints=[1, 2, 4, 8, 16], drift_mode="all").run()
    for mode in ("none", "global", "piecewise"):
        assert f"Drift mode: {mode}" in report
    failed = DsiHurstTool(values=series.values.tolist(), times=series.times.tolist(), q=16,
                          breakpoints=[1, 16]).run()
    assert failed.startswith("Error estimating DSI Hurst parameters: [detect]")


def test_hsssi_report():
    report = HsssiHurstTool(values=[float(j * j) for j in range(1, 301)], detrend=False).run()
    assert "Hurst estimate: 2.0000" in report
    assert "Error" in HsssiHurstTool(values=[1.0] * 20).run()


def test_fluctuation_report():
    rng = np.random.default_rng(0)
    assert "DMA Hurst" in FluctuationHurstTool(values=rng.normal(size=512).tolist(), method="dma").run()
    assert "unknown method" in FluctuationHurstTool(values=[1.0, 2.0], method="RS").run()


def test_benchmark_report():
    report = BenchmarkTool(n=256, reps=10, hurst_grid=[0.5], methods=["DFA", "diff2"]).run()
    assert "Best method per Hurst value" in report
    assert BenchmarkTool(n=256, reps=10, hurst_grid=[1.5]).run().startswith("Error running benchmark")
