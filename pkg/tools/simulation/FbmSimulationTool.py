from agency_swarm.tools import BaseTool
from pydantic import Field
import numpy as np

from dsi_hurst.errors import DsiHurstError
from dsi_hurst.sim import FbmSpec, generate_fgn


class FbmSimulationTool(BaseTool):
    """
    A tool to simulate exact fractional Brownian motion (or its increments,
    fractional Gaussian noise) for a given Hurst index. Returns summary
    statistics and the simulated values, reproducible from the seed.
    """

    n: int = Field(
        ..., ge=2,
        description="Number of samples to simulate (e.g. 2048)."
    )

    hurst: float = Field(
        ..., gt=0.0, lt=1.0,
        description="Hurst index H in (0, 1); 0.5 gives ordinary Brownian motion."
    )

    sigma: float = Field(
        1.0, gt=0.0,
        description="Scale of the process: Var(B_H(1)) = sigma^2 (default: 1)."
    )

    seed: int = Field(
        0, ge=0,
        description="Random seed; the same seed always gives the same path (default: 0)."
    )

    increments: bool = Field(
        False,
        description="Return the fGn increments instead of the cumulated fBm path (default: False)."
    )

    def run(self):
        """
        Simulates the series and returns a report followed by the values.
        """
        try:
            spec = FbmSpec(n=self.n, hurst=self.hurst, sigma=self.sigma, seed=self.seed)
            fgn = generate_fgn(spec)
            values = fgn if self.increments else np.cumsum(fgn)
            lag1 = float(np.corrcoef(fgn[:-1], fgn[1:])[0, 1]) if self.n > 2 else float("nan")
            expected = 2 ** (2 * self.hurst - 1) - 1

            kind = "fGn" if self.increments else "fBm"
            output = f"Simulated {kind} (n={self.n}, H={self.hurst}, sigma={self.sigma}, seed={self.seed})\n"
            output += "=" * 50 + "\n\n"
            output += f"Increment std: {fgn.std():.4f} (expected {self.sigma:.4f})\n"
            output += f"Lag-1 autocorrelation: {lag1:.4f} (expected {expected:.4f})\n"
            output += f"Final value: {values[-1]:.6g}\n"
            output += "-" * 50 + "\n"
            output += "Values:\n"
            output += ",".join(repr(float(v)) for v in values) + "\n"
            return output

        except DsiHurstError as e:
            return f"Error simulating fBm: {e}"


if __name__ == "__main__":
    tool = FbmSimulationTool(n=256, hurst=0.7, seed=1)
    print(tool.run()[:400])
