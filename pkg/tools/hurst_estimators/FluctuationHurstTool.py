from agency_swarm.tools import BaseTool
from pydantic import Field
from typing import List, Optional
import numpy as np

from dsi_hurst.baselines import ESTIMATORS
from dsi_hurst.errors import DsiHurstError


class FluctuationHurstTool(BaseTool):
    """
    A tool to estimate the Hurst parameter of a stationary series (e.g.
    fractional Gaussian noise or daily returns) with fluctuation analysis (FA),
    detrended fluctuation analysis (DFA) or the detrending moving average (DMA).
    """

    values: List[float] = Field(
        ...,
        description="Increments (noise), not the integrated path."
    )

    method: str = Field(
        "DFA",
        description="One of 'FA', 'DFA', 'DMA' (default: 'DFA')."
    )

    scales: Optional[List[int]] = Field(
        None,
        description="Window sizes; a geometric grid from 8 to n/4 when empty."
    )

    levels: bool = Field(
        False,
        description="Set to True if the values are path levels; they are differenced first."
    )

    def run(self):
        """
        Returns the fluctuation curve and the fitted log-log slope.
        """
        estimator = ESTIMATORS.get(self.method.upper())
        if estimator is None:
            return f"Error: unknown method {self.method!r}; choose from {sorted(ESTIMATORS)}"
        try:
            x = np.diff(self.values) if self.levels else np.asarray(self.values, dtype=float)
            curve = estimator(x, self.scales)

            output = f"{curve.method} Hurst Estimation Report\n"
            output += "=" * 30 + "\n\n"
            for s, f in zip(curve.scales, curve.F):
                output += f"   scale={int(s)}: F={f:.6g}\n"
            output += "-" * 50 + "\n"
            output += f"Hurst estimate: {curve.hurst:.4f}\n"
            return output

        except DsiHurstError as e:
            return f"Error estimating Hurst parameter: {e}"


if __name__ == "__main__":
    from dsi_hurst.sim import FbmSpec, generate_fgn
    noise = generate_fgn(FbmSpec(n=4096, hurst=0.8, seed=1))
    for method in ("FA", "DFA", "DMA"):
        print(FluctuationHurstTool(values=noise.tolist(), method=method).run())
