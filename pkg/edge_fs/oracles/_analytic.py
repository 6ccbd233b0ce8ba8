from typing import Union

from numpy import asarray, broadcast_to, float64, ndarray

from edge_fs._errors import GeometryError
from edge_fs.frame_io import CameraIntrinsics


def analytic_flow(
    intr: CameraIntrinsics,
    v_x: float,
    v_y: float,
    omega_z: float,
    depth_per_column: Union[float, ndarray],
) -> ndarray:
    """
    Pinhole prediction of the horizontal flow of every column, in rad/s.

    `o(x) = (-v_y + x * v_x) / d(x) + omega_z` with `x` the normalized column coordinate. Multiply by
    `intr.focal_px` for pixels per second. `NaN` depths (nothing hit) give `NaN` flow.

    Args:
        intr (CameraIntrinsics): Camera.
        v_x (float): Forward velocity, m/s.
        v_y (float): Sideways velocity (positive right), m/s.
        omega_z (float): Yaw rate (positive counter-clockwise), rad/s.
        depth_per_column (float or ndarray): Scene depth along the optical axis, scalar or one per column.
    """
    depth = broadcast_to(asarray(depth_per_column, dtype=float64), (intr.width_px,))
    if (depth <= 0).any():
        raise GeometryError("Scene depth must be positive in every column.")
    return (-v_y + intr.normalized_columns() * v_x) / depth + omega_z
