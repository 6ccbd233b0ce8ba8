"""Per-frame estimate tables: construction, ground-truth alignment and CSV persistence."""
from pathlib import Path
from typing import Optional, Sequence, Union

from pandas import DataFrame, merge_asof, read_csv
from pandas.errors import EmptyDataError, ParserError

from edge_fs._errors import DataError, FrameIOError
from edge_fs.velocity_estimator._fit import VelocityEstimate

ESTIMATE_COLUMNS = [
    "t",
    "vx_est",
    "vy_est",
    "vx_gt",
    "vy_gt",
    "n_points",
    "residual_rms",
]


def estimates_to_dataframe(
    estimates: Sequence[VelocityEstimate],
    mean_depth_m: Optional[Sequence[float]] = None,
) -> DataFrame:
    """Estimate table without ground truth: t, vx_est, vy_est, n_points, residual_rms (and mean_depth_m)."""
    df = DataFrame(
        {
            "t": [est.timestamp_s for est in estimates],
            "vx_est": [est.vx_m_s for est in estimates],
            "vy_est": [est.vy_m_s for est in estimates],
            "n_points": [est.n_points for est in estimates],
            "residual_rms": [est.residual_rms for est in estimates],
        }
    )
    if mean_depth_m is not None:
        df["mean_depth_m"] = list(mean_depth_m)
    return df


def align_to_ground_truth(
    df_est: DataFrame, df_gt: DataFrame, tolerance_s: float
) -> DataFrame:
    """
    Attaches to every estimate the ground-truth sample nearest in time.

    Args:
        df_est (DataFrame): Estimate table with a "t" column.
        df_gt (DataFrame): Ground truth with "t", "vx_gt" and "vy_gt" columns.
        tolerance_s (float): Largest time difference accepted; estimates without a match get `NaN` truth.

    Returns:
        DataFrame: `ESTIMATE_COLUMNS` first, then any extra estimate columns.
    """
    for col in ("t", "vx_gt", "vy_gt"):
        if col not in df_gt.columns:
            raise DataError(f'Column "{col}" is required in the ground-truth table.')
    df_merged = merge_asof(
        df_est.drop(columns=["vx_gt", "vy_gt"], errors="ignore").sort_values("t"),
        df_gt[["t", "vx_gt", "vy_gt"]].sort_values("t"),
        on="t",
        direction="nearest",
        tolerance=tolerance_s,
    )
    extra = [col for col in df_merged.columns if col not in ESTIMATE_COLUMNS]
    return df_merged[ESTIMATE_COLUMNS + extra]


def write_estimates_csv(df: DataFrame, path: Union[str, Path]) -> None:
    """Writes an estimate table; missing ground-truth columns are written empty."""
    df_out = df.copy()
    for col in ESTIMATE_COLUMNS:
        if col not in df_out.columns:
            df_out[col] = float("nan")
    extra = [col for col in df_out.columns if col not in ESTIMATE_COLUMNS]
    try:
        df_out[ESTIMATE_COLUMNS + extra].to_csv(path, index=False)
    except OSError as err:
        raise FrameIOError(f'Could not write "{path}": {err}') from err


def read_estimates_csv(path: Union[str, Path]) -> DataFrame:
    """Reads an estimate CSV written by `write_estimates_csv()`."""
    try:
        df = read_csv(path)
    except OSError as err:
        raise FrameIOError(f'Could not read "{path}": {err}') from err
    except (EmptyDataError, ParserError) as err:
        raise DataError(f'Estimate CSV "{path}" cannot be parsed: {err}') from err
    missing = [col for col in ESTIMATE_COLUMNS if col not in df.columns]
    if missing:
        raise DataError(f'Estimate CSV "{path}" lacks column(s) {missing}.')
    return df
