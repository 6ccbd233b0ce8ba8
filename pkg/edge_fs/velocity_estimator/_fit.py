from dataclasses import dataclass, field
from typing import Iterator, NamedTuple

from numpy import flatnonzero, nan, ndarray, polyfit, sqrt
from scipy.stats import theilslopes

from edge_fs._errors import DataError
from edge_fs.edge_flow import FlowProfile
from edge_fs.edge_stereo import DepthProfile
from edge_fs.frame_io import CameraIntrinsics

DEFAULT_N_MIN = 20
FIT_METHODS = ("ols", "theil-sen")


class FitPoint(NamedTuple):
    x_norm: float
    y_scaled: float


@dataclass(frozen=True, eq=False)
class FitPoints:
    """Scaled flow samples `(x, d * o^T)` of the columns valid in both flow and depth."""

    x_norm: ndarray
    y_scaled: ndarray
    columns: ndarray

    def __len__(self) -> int:
        return self.x_norm.shape[0]

    def __iter__(self) -> Iterator[FitPoint]:
        for x, y in zip(self.x_norm, self.y_scaled):
            yield FitPoint(float(x), float(y))


@dataclass(frozen=True)
class VelocityEstimate:
    """
    Body-frame velocity from one line fit.

    `vx_m_s` is forward, `vy_m_s` sideways (positive to the right). An invalid estimate carries `NaN`
    velocities and the number of points it had.
    """

    vx_m_s: float
    vy_m_s: float
    n_points: int
    residual_rms: float
    timestamp_s: float
    valid: bool = field(default=True)

    @classmethod
    def invalid(cls, n_points: int, timestamp_s: float) -> "VelocityEstimate":
        return cls(
            vx_m_s=nan,
            vy_m_s=nan,
            n_points=n_points,
            residual_rms=nan,
            timestamp_s=timestamp_s,
            valid=False,
        )


def scale_flow(
    flow: FlowProfile,
    depth: DepthProfile,
    intr: CameraIntrinsics,
    yaw_curvature: bool = True,
) -> FitPoints:
    """
    Scales translational flow by stereo depth into metric fit points.

    Flow is converted to angular units (`o^T / f`, rad/s) and each column to its normalized coordinate, so
    that `d * o^T = -v_y + x * v_x` holds in meters per second. Columns invalid in either profile are
    dropped.

    Yaw moves a pinhole column at `omega * (1 + x**2)` while derotation subtracts the constant part only.
    With `yaw_curvature` the remaining `omega * x**2` is removed here; left in, it biases `v_y` by about
    `-omega * d * mean(x**2)`.
    """
    if flow.valid.shape != depth.valid.shape:
        raise DataError(
            f"Flow ({flow.valid.shape[0]}) and depth ({depth.valid.shape[0]}) "
            "profiles differ in width."
        )
    columns = flatnonzero(flow.valid & depth.valid)
    x_norm = intr.normalized_columns()[columns]
    angular = flow.translational_px_s[columns] / intr.focal_px
    if yaw_curvature:
        angular = angular - flow.rotational_px_s / intr.focal_px * x_norm**2
    return FitPoints(
        x_norm=x_norm,
        y_scaled=depth.depth_m[columns] * angular,
        columns=columns,
    )


def fit_velocity(
    points: FitPoints,
    n_min: int = DEFAULT_N_MIN,
    timestamp_s: float = 0.0,
    method: str = "ols",
) -> VelocityEstimate:
    """
    Line fit `y = v_x * x - v_y` through the scaled flow.

    Args:
        points (FitPoints): Output of `scale_flow()`.
        n_min (int): Fewer points than this give an invalid estimate.
        timestamp_s (float): Frame time stamped on the estimate.
        method (str): "ols" (least squares) or "theil-sen" (median of pairwise slopes).

    Returns:
        VelocityEstimate: Slope is forward velocity, minus the intercept is sideways velocity.
    """
    if method not in FIT_METHODS:
        raise DataError(f'Unknown fit method "{method}"; choose one of {FIT_METHODS}.')
    n = len(points)
    if n < max(n_min, 2):
        return VelocityEstimate.invalid(n_points=n, timestamp_s=timestamp_s)

    x, y = points.x_norm, points.y_scaled
    if method == "ols":
        slope, intercept = polyfit(x, y, 1)
    else:
        slope, intercept = theilslopes(y, x)[:2]
    resid = y - (slope * x + intercept)
    return VelocityEstimate(
        vx_m_s=float(slope),
        vy_m_s=float(-intercept),
        n_points=n,
        residual_rms=float(sqrt((resid**2).mean())),
        timestamp_s=timestamp_s,
    )
