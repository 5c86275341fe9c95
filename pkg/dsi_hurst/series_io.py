"""CSV ingestion and output for series and result tables."""
import logging

import numpy as np
import pandas as pd

from dsi_hurst.errors import DsiHurstError, InvalidInputError, SeriesTooShortError
from dsi_hurst.series import TimeSeries

logger = logging.getLogger(__name__)


def _column(frame, spec, role):
    if spec is None:
        return None
    if isinstance(spec, str) and spec.lstrip("-").isdigit():
        spec = int(spec)
    if isinstance(spec, int):
        try:
            return frame.iloc[:, spec]
        except IndexError:
            raise InvalidInputError(f"{role} column index {spec} out of range ({frame.shape[1]} columns)") from None
    if spec not in frame.columns:
        raise InvalidInputError(f"{role} column {spec!r} not found; columns are {list(frame.columns)}")
    return frame[spec]


def parse_series_csv(path, time_col=None, value_col=-1, header=True):
    """Read a (time, value) series; returns (TimeSeries, skipped_row_count).

    Columns are chosen by name or index. Rows with a missing or unparseable
    value (or time) are skipped. Without ``time_col`` the times are 1..n over
    the rows kept, as for daily records with non-trading days absent.
    """
    try:
        frame = pd.read_csv(
            path, header=0 if header else None, dtype=str, skip_blank_lines=False,
            keep_default_na=False, encoding="utf-8",
        )
    except (OSError, pd.errors.ParserError, UnicodeDecodeError) as e:
        raise DsiHurstError(f"cannot read {path}: {e}", stage="ingest") from e
    except pd.errors.EmptyDataError:
        raise SeriesTooShortError(f"{path} is empty", stage="ingest") from None

    values = pd.to_numeric(_column(frame, value_col, "value").str.strip(), errors="coerce")
    times_raw = _column(frame, time_col, "time")
    times = None if times_raw is None else pd.to_numeric(times_raw.str.strip(), errors="coerce")

    keep = np.isfinite(values.to_numpy(dtype=float))
    if times is not None:
        keep &= np.isfinite(times.to_numpy(dtype=float))
    skipped = int((~keep).sum())
    if skipped:
        logger.warning("%s: skipped %d row(s) with missing or unparseable entries", path, skipped)
    if keep.sum() < 2:
        raise SeriesTooShortError(f"{path}: fewer than 2 valid rows", stage="ingest")

    kept_values = values.to_numpy(dtype=float)[keep]
    if times is None:
        kept_times = np.arange(1, kept_values.size + 1, dtype=float)
    else:
        kept_times = times.to_numpy(dtype=float)[keep]
        if np.any(np.diff(kept_times) <= 0):
            raise InvalidInputError(f"{path}: times are not strictly increasing", stage="ingest")
    return TimeSeries(kept_times, kept_values), skipped


def write_series_csv(series, path):
    """time,value with round-trip float precision."""
    frame = pd.DataFrame({"time": series.times, "value": series.values})
    frame.to_csv(path, index=False, float_format="%.17g")
    logger.info("wrote %d samples to %s", len(series), path)


def write_table_csv(frame, path):
    frame.to_csv(path, index=False, float_format="%.17g")
    logger.info("wrote %d rows to %s", len(frame), path)
