"""EdgeStereo: per-column disparity and depth from left/right edge distributions."""
from ._stereo import (
    DEFAULT_OBSTACLE_WINDOW,
    DEFAULT_S_MIN_PX,
    DepthProfile,
    Obstacle,
    compute_disparity,
    depth_to_disparity,
    disparity_to_depth,
    nearest_obstacle,
)

__all__ = [
    "DEFAULT_OBSTACLE_WINDOW",
    "DEFAULT_S_MIN_PX",
    "DepthProfile",
    "Obstacle",
    "compute_disparity",
    "depth_to_disparity",
    "disparity_to_depth",
    "nearest_obstacle",
]
