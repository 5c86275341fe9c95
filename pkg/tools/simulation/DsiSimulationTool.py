from agency_swarm.tools import BaseTool
from pydantic import Field
from typing import List, Optional
import numpy as np

from dsi_hurst.errors import DsiHurstError
from dsi_hurst.series import PiecewiseLinearDrift
from dsi_hurst.sim import SimpleBmDsiSpec, generate_simple_bm_dsi


class DsiSimulationTool(BaseTool):
    """
    A tool to simulate the simple Brownian motion DSI process: one Brownian path
    rescaled by lambda^{n(H-1/2)} on each scale interval [lambda^(n-1), lambda^n),
    optionally with a different linear drift on every interval.
    """

    hurst: float = Field(
        ..., gt=0.0,
        description="Hurst index H > 0 of the process."
    )

    lam: float = Field(
        ..., gt=1.0,
        description="Scale parameter lambda > 1 (interval n spans [lambda^(n-1), lambda^n))."
    )

    intervals: int = Field(
        4, ge=1,
        description="Number of scale intervals M (default: 4)."
    )

    mesh: int = Field(
        64, ge=1,
        description="Samples per unit time (default: 64)."
    )

    drift: Optional[List[List[float]]] = Field(
        None,
        description="Optional [alpha, beta] pair per scale interval; the drift alpha + beta*t is added on that interval."
    )

    seed: int = Field(
        0, ge=0,
        description="Random seed (default: 0)."
    )

    def run(self):
        """
        Simulates the process and returns the per-interval summary and the samples.
        """
        try:
            spec = SimpleBmDsiSpec(hurst=self.hurst, lam=self.lam, M=self.intervals, mesh=self.mesh, seed=self.seed)
            if self.drift:
                spec = spec.model_copy(update={
                    "drift": PiecewiseLinearDrift.from_partition(spec.partition, self.drift)
                })
            series = generate_simple_bm_dsi(spec)
            idx = spec.partition.segment_index(series.times)

            output = f"Simple Brownian motion DSI (H={self.hurst}, lambda={self.lam}, M={self.intervals})\n"
            output += "=" * 50 + "\n\n"
            for k, (a, b) in enumerate(spec.partition.intervals):
                block = series.values[idx == k]
                output += f"Interval {k + 1} [{a:g}, {b:g}): {block.size} samples, "
                output += f"increment std {np.diff(block).std():.4f}\n"
            output += "-" * 50 + "\n"
            output += "Samples (time,value):\n"
            output += "\n".join(f"{t!r},{v!r}" for t, v in zip(series.times.tolist(), series.values.tolist()))
            return output

        except DsiHurstError as e:
            return f"Error simulating DSI process: {e}"


if __name__ == "__main__":
    tool = DsiSimulationTool(hurst=0.7, lam=2.0, intervals=3, mesh=8, drift=[[0, 1], [2, 0.5], [5, -0.2]])
    print(tool.run()[:600])
