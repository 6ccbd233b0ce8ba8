import logging
from dataclasses import asdict, dataclass, field
from typing import Sequence, Union

from numpy import asarray, float64, isfinite, nan, ndarray, sqrt
from pandas import DataFrame, Series, cut
from scipy.stats import spearmanr

from edge_fs._errors import MetricsError

ArrayLike = Union[Sequence[float], ndarray, Series]

DEFAULT_DEPTH_BUCKETS_M = (0.0, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 4.0, 6.0)


@dataclass(frozen=True)
class MetricsReport:
    """
    Agreement of an estimate series with ground truth.

    Attributes:
        mse: Mean squared error.
        var: Variance of the error (population variance).
        nmxm: Lag-0 normalized cross-correlation of the zero-mean series, in [-1, 1]. `NaN` when either
            series is constant; `nmxm_valid` is then False.
        n: Number of finite sample pairs used.
    """

    mse: float
    var: float
    nmxm: float
    n: int
    nmxm_valid: bool = field(default=True)


def compute_metrics(estimates: ArrayLike, ground_truth: ArrayLike) -> MetricsReport:
    """
    MSE, error variance and NMXM of two aligned series.

    Pairs where either value is not finite are dropped with a warning.
    """
    est = asarray(estimates, dtype=float64)
    gt = asarray(ground_truth, dtype=float64)
    if est.shape != gt.shape:
        raise MetricsError(
            f"Estimate and ground-truth series differ in length: {est.shape} vs {gt.shape}."
        )
    keep = isfinite(est) & isfinite(gt)
    if not keep.all():
        logging.warning("  Dropping %s non-finite sample pair(s)", int((~keep).sum()))
        est, gt = est[keep], gt[keep]
    if est.size == 0:
        raise MetricsError("No finite sample pairs to compute metrics on.")

    err = est - gt
    mse = float((err**2).mean())
    var = float(err.var())

    est_c = est - est.mean()
    gt_c = gt - gt.mean()
    denom = sqrt((est_c**2).sum() * (gt_c**2).sum())
    if denom == 0:
        logging.warning("  NMXM undefined: a series has zero variance")
        return MetricsReport(mse=mse, var=var, nmxm=nan, n=int(est.size), nmxm_valid=False)
    nmxm = float(min(max((est_c * gt_c).sum() / denom, -1.0), 1.0))
    return MetricsReport(mse=mse, var=var, nmxm=nmxm, n=int(est.size))


def velocity_metrics(df: DataFrame) -> DataFrame:
    """
    Metrics of both velocity components of an aligned estimate table.

    Args:
        df (DataFrame): Columns "vx_est", "vy_est", "vx_gt" and "vy_gt".

    Returns:
        DataFrame: One row per component ("vx", "vy") with columns mse, var, nmxm, n, nmxm_valid.
    """
    for col in ("vx_est", "vy_est", "vx_gt", "vy_gt"):
        if col not in df.columns:
            raise MetricsError(f'Column "{col}" is required to compute velocity metrics.')
    rows = []
    for comp in ("vx", "vy"):
        report = compute_metrics(df[f"{comp}_est"], df[f"{comp}_gt"])
        rows.append({"component": comp, **asdict(report)})
    return DataFrame(rows).set_index("component")


def velocity_error(df: DataFrame, component: str = "both") -> Series:
    """Absolute velocity error per row: one component ("vx", "vy") or the norm of both ("both")."""
    dvx = df["vx_est"] - df["vx_gt"]
    dvy = df["vy_est"] - df["vy_gt"]
    if component == "vx":
        return dvx.abs()
    if component == "vy":
        return dvy.abs()
    if component == "both":
        return (dvx**2 + dvy**2) ** 0.5
    raise MetricsError(f'Unknown velocity component "{component}".')


def depth_error_table(
    depth_m: ArrayLike,
    abs_error: ArrayLike,
    bucket_edges_m: Sequence[float] = DEFAULT_DEPTH_BUCKETS_M,
) -> DataFrame:
    """
    Distribution of absolute errors grouped by observed depth.

    Args:
        depth_m (array-like): Mean observed depth of every sample.
        abs_error (array-like): Absolute error of every sample.
        bucket_edges_m (sequence): Increasing bucket edges; buckets are right-closed.

    Returns:
        DataFrame: One row per non-empty bucket with columns depth_lo_m, depth_hi_m, depth_mid_m, count,
            q25, median, q75.
    """
    df = DataFrame(
        {"depth": asarray(depth_m, dtype=float64), "error": asarray(abs_error, dtype=float64)}
    ).dropna()
    df["bucket"] = cut(df["depth"], bins=list(bucket_edges_m))
    df = df.dropna(subset=["bucket"])
    grouped = df.groupby("bucket", observed=True)["error"]
    table = DataFrame(
        {
            "count": grouped.size(),
            "q25": grouped.quantile(0.25),
            "median": grouped.median(),
            "q75": grouped.quantile(0.75),
        }
    )
    table.insert(0, "depth_lo_m", [iv.left for iv in table.index])
    table.insert(1, "depth_hi_m", [iv.right for iv in table.index])
    table.insert(2, "depth_mid_m", (table["depth_lo_m"] + table["depth_hi_m"]) / 2)
    return table.reset_index(drop=True)


def depth_error_trend(table: DataFrame) -> float:
    """Spearman rank correlation between bucket depth and median error; `NaN` with fewer than 2 buckets."""
    if len(table) < 2:
        return nan
    rho = spearmanr(table["depth_mid_m"], table["median"])[0]
    return float(rho)
