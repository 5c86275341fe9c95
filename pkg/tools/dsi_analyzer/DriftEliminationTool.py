from agency_swarm.tools import BaseTool
from pydantic import Field
from typing import List, Optional
import numpy as np

from dsi_hurst.detrend import eliminate_drift, fit_global_drift, fit_piecewise_drift
from dsi_hurst.errors import DsiHurstError
from dsi_hurst.series import ScalePartition, TimeSeries, window


class DriftEliminationTool(BaseTool):
    """
    A tool to fit and remove linear drift from a series: either one regression
    line over the whole span, or a separate line in every scale interval given
    by its breakpoints. Reports the fitted lines and the residual series.
    """

    values: List[float] = Field(
        ...,
        description="Observed values."
    )

    times: Optional[List[float]] = Field(
        None,
        description="Strictly increasing sample times; defaults to 1..n."
    )

    breakpoints: Optional[List[float]] = Field(
        None,
        description="Scale interval breakpoints a_0 < ... < a_M. With them one line per interval is fitted; without, one global line."
    )

    def run(self):
        """
        Returns the drift segments (start, end, alpha, beta) and the residuals.
        """
        try:
            series = TimeSeries(self.times, self.values) if self.times else TimeSeries.from_values(self.values)
            if self.breakpoints:
                partition = ScalePartition(self.breakpoints)
                series = window(series, partition.breakpoints[0], partition.breakpoints[-1])
                drift = fit_piecewise_drift(series, partition)
            else:
                drift = fit_global_drift(series)
            residual = eliminate_drift(series, drift)

            output = "Drift Elimination Report\n"
            output += "========================\n\n"
            for k, seg in enumerate(drift.segments, 1):
                output += f"{k}. [{seg.start:g}, {seg.end:g}]: alpha={seg.alpha:.6g}, slope={seg.beta:.6g}\n"
            output += "-" * 50 + "\n"
            output += f"Residual mean: {residual.values.mean():.3g}, std: {residual.values.std():.6g}\n"
            output += "Residuals:\n"
            output += ",".join(repr(float(v)) for v in np.asarray(residual.values)) + "\n"
            return output

        except DsiHurstError as e:
            return f"Error eliminating drift: {e}"


if __name__ == "__main__":
    t = np.arange(1.0, 61.0)
    values = np.where(t < 30, 3 + 2 * t, 10 - 0.5 * t) + np.sin(t)
    tool = DriftEliminationTool(values=values.tolist(), breakpoints=[1, 30, 60])
    print(tool.run()[:500])
