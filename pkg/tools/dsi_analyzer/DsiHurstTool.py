from agency_swarm.tools import BaseTool
from pydantic import Field
from typing import List, Optional

from dsi_hurst.dsi import compare_drift_modes, dsi_pipeline
from dsi_hurst.errors import DsiHurstError
from dsi_hurst.series import TimeSeries


class DsiHurstTool(BaseTool):
    """
    A tool to estimate the time-dependent Hurst parameters of a DSI series with
    piecewise linear drift: it finds (or takes) the scale intervals, removes the
    drift, samples q equally spaced points per interval and compares the
    increment variances of successive intervals.
    """

    values: List[float] = Field(
        ...,
        description="Observed values, e.g. daily index levels."
    )

    times: Optional[List[float]] = Field(
        None,
        description="Strictly increasing sample times; defaults to 1..n."
    )

    q: int = Field(
        64, ge=3,
        description="Equally spaced samples per scale interval (default: 64)."
    )

    breakpoints: Optional[List[float]] = Field(
        None,
        description="Scale interval breakpoints a_0 < ... < a_M; detected automatically when empty."
    )

    order: int = Field(
        1, ge=1, le=2,
        description="Difference order: 1 for increments, 2 for second differences (default: 1)."
    )

    drift_mode: str = Field(
        "piecewise",
        description="'none', 'global' (one line), 'piecewise' (one line per interval) or 'all' to compare them."
    )

    orientation: str = Field(
        "auto",
        description="Scale ratio orientation: 'forward' for growing intervals, 'backward' for shrinking ones, "
                    "'auto' to pick whichever makes the intervals grow."
    )

    per_pair_lambda: bool = Field(
        False,
        description="Use each interval pair's own scale ratio instead of the mean lambda (default: False)."
    )

    def run(self):
        """
        Runs the estimation and returns a per-interval table for each drift mode.
        """
        try:
            series = TimeSeries(self.times, self.values) if self.times else TimeSeries.from_values(self.values)
            options = dict(
                breakpoints=self.breakpoints,
                r=self.order,
                orientation=self.orientation,
                lambda_mode="per_pair" if self.per_pair_lambda else "mean",
            )
            if self.drift_mode == "all":
                results = compare_drift_modes(series, self.q, **options)
            else:
                results = {self.drift_mode: dsi_pipeline(series, self.q, drift_mode=self.drift_mode, **options)}

            output = "DSI Hurst Estimation Report\n"
            output += "===========================\n\n"
            first = next(iter(results.values()))
            output += "Breakpoints: " + ", ".join(f"{a:g}" for a in first.partition.breakpoints) + "\n"
            output += f"Lambda forward: {first.scale_forward.mean_ratio:.4f}, "
            output += f"backward: {first.scale_backward.mean_ratio:.4f}\n\n"
            for mode, result in results.items():
                est = result.estimate
                output += f"Drift mode: {mode}\n"
                output += "-" * 50 + "\n"
                for k, s2 in enumerate(est.interval_variances, 1):
                    output += f"   k={k}: S2={s2:.6g}"
                    if k > 1:
                        output += f", mu={est.mu_hats[k - 2]:.4f}, H={est.hurst_per_interval[k - 2]:.4f}"
                    output += "\n"
                output += f"   Mean H: {est.hurst_mean:.4f}\n"
                output += f"   H from mean ratio: {est.hurst_from_mu_mean:.4f}\n\n"
            return output

        except DsiHurstError as e:
            return f"Error estimating DSI Hurst parameters: {e}"


if __name__ == "__main__":
    from dsi_hurst.sim import SimpleBmDsiSpec, generate_simple_bm_dsi
    series = generate_simple_bm_dsi(SimpleBmDsiSpec(hurst=0.7, lam=2.0, M=4, mesh=16, seed=3))
    tool = DsiHurstTool(
        values=series.values.tolist(),
        times=series.times.tolist(),
        q=16,
        breakpoints=[1, 2, 4, 8, series.times[-1]],
        drift_mode="all",
    )
    print(tool.run())
