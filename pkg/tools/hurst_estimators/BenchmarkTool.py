from agency_swarm.tools import BaseTool
from pydantic import Field
from typing import List, Optional

from dsi_hurst.bench import ALL_METHODS, BenchConfig, best_methods, run_benchmark
from dsi_hurst.errors import DsiHurstError


class BenchmarkTool(BaseTool):
    """
    A tool to compare Hurst estimators by Monte Carlo simulation: it draws
    fractional Brownian motion paths for each Hurst value and reports the mean
    squared error, bias and variance of every method on the same paths.
    """

    n: int = Field(
        1000, ge=60, le=20000,
        description="Samples per simulated path (default: 1000)."
    )

    reps: int = Field(
        50, ge=10, le=1000,
        description="Replications per Hurst value (default: 50)."
    )

    hurst_grid: List[float] = Field(
        [0.3, 0.5, 0.7],
        description="Hurst values in (0, 1) to simulate."
    )

    methods: List[str] = Field(
        list(ALL_METHODS),
        description="Methods to compare: FA, DFA, DMA, diff1, diff2."
    )

    drift_slope: Optional[float] = Field(
        None,
        description="Optional linear drift per step added to every path."
    )

    seed: int = Field(
        0, ge=0,
        description="Master seed (default: 0)."
    )

    def run(self):
        """
        Returns the MSE table and the best method per Hurst value.
        """
        try:
            cfg = BenchConfig(
                n=self.n, reps=self.reps, hurst_grid=self.hurst_grid,
                methods=self.methods, drift_slope=self.drift_slope, seed=self.seed,
            )
            table = run_benchmark(cfg)
        except (DsiHurstError, ValueError) as e:
            return f"Error running benchmark: {e}"

        output = "Hurst Estimator Benchmark\n"
        output += "=========================\n\n"
        output += table.frame.to_string(index=False, float_format=lambda v: f"{v:.6f}") + "\n\n"
        output += "Best method per Hurst value:\n"
        for row in best_methods(table).itertuples(index=False):
            output += f"   H={row.H:g}: {row.method} (MSE {row.mse:.6f})\n"
        return output


if __name__ == "__main__":
    tool = BenchmarkTool(n=500, reps=10, hurst_grid=[0.4, 0.8])
    print(tool.run())
