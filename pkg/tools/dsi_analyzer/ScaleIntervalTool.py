from agency_swarm.tools import BaseTool
from pydantic import Field
from typing import List, Optional

from dsi_hurst.errors import DsiHurstError
from dsi_hurst.scalegrid import detect_scale_intervals, estimate_scale
from dsi_hurst.series import TimeSeries


class ScaleIntervalTool(BaseTool):
    """
    A tool to detect the scale intervals of a DSI series by fitting one parabola
    per interval (least-squares segmentation), and to estimate the scale
    parameter lambda from the ratios of successive interval lengths.
    """

    values: List[float] = Field(
        ...,
        description="Observed values, e.g. daily index levels."
    )

    times: Optional[List[float]] = Field(
        None,
        description="Strictly increasing sample times; defaults to 1..n."
    )

    intervals: Optional[int] = Field(
        None, ge=1,
        description="Number of scale intervals; leave empty to choose it automatically."
    )

    min_len: int = Field(
        4, ge=4,
        description="Minimum number of samples per interval (default: 4)."
    )

    def run(self):
        """
        Returns the breakpoints and the scale estimates in both orientations.
        """
        try:
            series = TimeSeries(self.times, self.values) if self.times else TimeSeries.from_values(self.values)
            partition = detect_scale_intervals(series, M=self.intervals, min_len=self.min_len)

            output = "Scale Interval Report\n"
            output += "=====================\n\n"
            output += f"Intervals: {partition.M}\n"
            output += "Breakpoints: " + ", ".join(f"{a:g}" for a in partition.breakpoints) + "\n"
            if partition.M >= 2:
                for orientation in ("forward", "backward"):
                    scale = estimate_scale(partition, orientation)
                    ratios = ", ".join(f"{r:.4f}" for r in scale.per_pair_ratios)
                    output += f"Lambda ({orientation}): {scale.mean_ratio:.4f} from ratios [{ratios}]\n"
            return output

        except DsiHurstError as e:
            return f"Error detecting scale intervals: {e}"


if __name__ == "__main__":
    import numpy as np
    t = np.arange(120.0)
    values = np.where(t < 40, (t - 20) ** 2, np.where(t < 80, 400 - (t - 60) ** 2, 0.5 * (t - 100) ** 2))
    tool = ScaleIntervalTool(values=values.tolist(), intervals=3)
    print(tool.run())
