from dataclasses import dataclass, replace
from typing import NamedTuple, Optional

from numpy import argmin, asarray, errstate, float64, nan, ndarray, where
from numpy.typing import ArrayLike
from numpy.lib.stride_tricks import sliding_window_view

from edge_fs._errors import DataError
from edge_fs.block_matcher import MatchConfig, MatchProfile, match_profiles
from edge_fs.edge_distribution import EdgeDistribution
from edge_fs.frame_io import CameraIntrinsics

DEFAULT_S_MIN_PX = 0.25
DEFAULT_OBSTACLE_WINDOW = 11


@dataclass(frozen=True, eq=False)
class DepthProfile:
    """Per-column disparity `s_u` (px) and depth `d_x` (m) on left-camera columns."""

    disparity_px: ndarray
    depth_m: ndarray
    valid: ndarray

    @property
    def mean_depth_m(self) -> float:
        """Mean of the valid depths; NaN when no column is valid."""
        if not self.valid.any():
            return nan
        return float(self.depth_m[self.valid].mean())


class Obstacle(NamedTuple):
    distance_m: float
    column_index: int


def compute_disparity(
    left_dist: EdgeDistribution,
    right_dist: EdgeDistribution,
    cfg: MatchConfig = MatchConfig(),
) -> MatchProfile:
    """
    Per-column disparity of a rectified pair, indexed by left-image columns.

    A point at left column `u` appears at `u - s` on the right with `s >= 0`, so the matcher searches
    offsets `[-search_range_px, 0]` from the left distribution and the result is negated. Bounds set on
    `cfg` are ignored.

    Returns:
        MatchProfile: Displacements are disparities in `[0, search_range_px]` (plus sub-pixel).
    """
    one_sided = cfg.with_bounds(-cfg.search_range_px, 0)
    match = match_profiles(left_dist, right_dist, one_sided, shift_px=0)
    disparity = -match.displacement_px
    integer_px = -match.integer_px
    disparity.flags.writeable = False
    integer_px.flags.writeable = False
    return replace(match, displacement_px=disparity, integer_px=integer_px)


def disparity_to_depth(
    profile: MatchProfile,
    intr: CameraIntrinsics,
    s_min: float = DEFAULT_S_MIN_PX,
) -> DepthProfile:
    """
    Converts disparity to depth with `d = w * r / (alpha_FOV * s)`.

    Columns that are not confident, or whose disparity is below `s_min`, are invalid (beyond range) and hold
    `NaN` depth.
    """
    if not s_min > 0:
        raise DataError(f"s_min must be positive, got {s_min}.")
    disparity = profile.displacement_px
    valid = profile.confident & (where(profile.valid, disparity, 0.0) >= s_min)
    with errstate(divide="ignore", invalid="ignore"):
        depth = where(
            valid,
            intr.width_px * intr.baseline_m / (intr.fov_h_rad * disparity),
            nan,
        )
    return DepthProfile(disparity_px=disparity, depth_m=depth, valid=valid)


def depth_to_disparity(depth_m: ArrayLike, intr: CameraIntrinsics) -> ndarray:
    """Disparity in pixels that a depth produces, `s = w * r / (alpha_FOV * d)`; `NaN` stays `NaN`."""
    depth = asarray(depth_m, dtype=float64)
    if (depth <= 0).any():
        raise DataError("Depth must be positive.")
    return intr.width_px * intr.baseline_m / (intr.fov_h_rad * depth)


def nearest_obstacle(
    depth: DepthProfile, k_window: int = DEFAULT_OBSTACLE_WINDOW
) -> Optional[Obstacle]:
    """
    Closest windowed-mean depth over windows of `k_window` fully valid columns.

    Returns:
        Obstacle: Distance and center column of the closest window, or None if no window qualifies.
    """
    if k_window < 1 or k_window % 2 == 0:
        raise DataError(f"k_window must be a positive odd number, got {k_window}.")
    n = depth.depth_m.shape[0]
    if n < k_window:
        return None
    all_valid = sliding_window_view(depth.valid, k_window).all(axis=1)
    if not all_valid.any():
        return None
    filled = where(depth.valid, depth.depth_m, 0.0)
    means = sliding_window_view(filled, k_window).mean(axis=1)
    means = where(all_valid, means, float("inf"))
    start = int(argmin(means))
    return Obstacle(distance_m=float(means[start]), column_index=start + k_window // 2)
