from agency_swarm.tools import BaseTool
from pydantic import Field
from typing import List

from dsi_hurst.errors import DsiHurstError
from dsi_hurst.hsssi import estimate_hsssi
from dsi_hurst.series import TimeSeries


class HsssiHurstTool(BaseTool):
    """
    A tool to estimate the Hurst parameter of a self-similar series with
    stationary increments (e.g. fractional Brownian motion) from the variance
    ratio of k-step and 1-step differences, after optional removal of a
    global linear drift.
    """

    values: List[float] = Field(
        ...,
        description="Observed path values (not increments), at least 60 samples."
    )

    order: int = Field(
        1, ge=1, le=2,
        description="Difference order: 1 or 2 (default: 1)."
    )

    detrend: bool = Field(
        True,
        description="Remove the least-squares line before estimating (default: True)."
    )

    def run(self):
        """
        Returns the per-stride estimates and their mean.
        """
        try:
            est = estimate_hsssi(TimeSeries.from_values(self.values), r=self.order, detrend=self.detrend)

            output = "HSSSI Hurst Estimation Report\n"
            output += "=============================\n\n"
            output += f"Difference order: {est.r}, detrended: {est.detrended}, K*: {est.K_star}\n"
            output += "-" * 50 + "\n"
            for k, ratio, h in zip(est.strides, est.ratios, est.per_k_hurst):
                output += f"   k={k}: ratio={ratio:.6g}, H={h:.4f}\n"
            output += "-" * 50 + "\n"
            output += f"Hurst estimate: {est.hurst:.4f}\n"
            return output

        except DsiHurstError as e:
            return f"Error estimating Hurst parameter: {e}"


if __name__ == "__main__":
    from dsi_hurst.sim import FbmSpec, generate_fbm
    path = generate_fbm(FbmSpec(n=2048, hurst=0.7, seed=5))
    tool = HsssiHurstTool(values=path.values.tolist(), order=2)
    print(tool.run())
