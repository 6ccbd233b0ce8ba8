import logging
from dataclasses import dataclass, field
from typing import Optional

from edge_fs.block_matcher import MatchConfig, MatchProfile
from edge_fs.edge_distribution import EdgeDistribution, edge_distribution
from edge_fs.edge_flow import (
    DEFAULT_HISTORY_SIZE,
    DistributionHistory,
    FlowProfile,
    compute_flow,
)
from edge_fs.edge_stereo import (
    DEFAULT_OBSTACLE_WINDOW,
    DEFAULT_S_MIN_PX,
    DepthProfile,
    Obstacle,
    compute_disparity,
    disparity_to_depth,
    nearest_obstacle,
)
from edge_fs.frame_io import CameraIntrinsics, StereoFrame
from edge_fs.velocity_estimator import (
    DEFAULT_MEDIAN_WINDOW,
    DEFAULT_N_MIN,
    FitPoints,
    VelocityEstimate,
    VelocityMedianFilter,
    fit_velocity,
    scale_flow,
)


@dataclass(frozen=True, eq=False)
class FrameResult:
    """Everything the pipeline derived from one stereo frame."""

    timestamp_s: float
    left_distribution: EdgeDistribution
    right_distribution: EdgeDistribution
    disparity: MatchProfile
    depth: DepthProfile
    flow: Optional[FlowProfile]
    points: Optional[FitPoints]
    raw_estimate: VelocityEstimate
    estimate: VelocityEstimate
    nearest: Optional[Obstacle]

    @property
    def mean_depth_m(self) -> float:
        return self.depth.mean_depth_m


@dataclass
class EdgeFSPipeline:
    """
    Per-frame Edge-FS chain: edge distributions, stereo depth, derotated flow, scaling, line fit and median
    filter.

    Flow is measured on the left camera, whose columns also index the depth profile. Frames must arrive in
    time order; the pipeline keeps the distribution history and the median window between calls.

    Args:
        intrinsics (CameraIntrinsics): Camera of the incoming frames.
        flow_config (MatchConfig): Matcher settings for temporal matching.
        stereo_config (MatchConfig): Matcher settings for left/right matching (bounds are set one-sided).
        history_size (int): Edge distributions kept for the adaptive horizon.
        s_min (float): Smallest disparity converted to depth, px.
        n_min (int): Fewest fit points for a valid estimate.
        median_window (int): Estimates in the median filter.
        obstacle_window (int): Columns averaged by the nearest-obstacle detector.
        fit_method (str): "ols" or "theil-sen".
    """

    intrinsics: CameraIntrinsics
    flow_config: MatchConfig = field(default_factory=MatchConfig)
    stereo_config: MatchConfig = field(default_factory=MatchConfig)
    history_size: int = field(default=DEFAULT_HISTORY_SIZE)
    s_min: float = field(default=DEFAULT_S_MIN_PX)
    n_min: int = field(default=DEFAULT_N_MIN)
    median_window: int = field(default=DEFAULT_MEDIAN_WINDOW)
    obstacle_window: int = field(default=DEFAULT_OBSTACLE_WINDOW)
    fit_method: str = field(default="ols")

    def __post_init__(self):
        self.history = DistributionHistory(self.history_size)
        self.median_filter = VelocityMedianFilter(self.median_window)

    def reset(self) -> None:
        self.history.clear()
        self.median_filter.clear()

    def process(self, frame: StereoFrame) -> FrameResult:
        """Runs the whole chain on `frame` and returns every intermediate product."""
        t = frame.timestamp_s
        left = edge_distribution(frame.left, t)
        right = edge_distribution(frame.right, t)

        disparity = compute_disparity(left, right, self.stereo_config)
        depth = disparity_to_depth(disparity, self.intrinsics, self.s_min)
        nearest = nearest_obstacle(depth, self.obstacle_window)

        self.history.push(left)
        flow, points = None, None
        if len(self.history) >= 2:
            flow = compute_flow(
                self.history, frame.gyro_z_rad_s, self.intrinsics, self.flow_config
            )
            per_frame = flow.per_frame_displacement_px()
            if per_frame is not None:
                self.history.prev_flow_px_per_frame = per_frame
            points = scale_flow(flow, depth, self.intrinsics)
            raw = fit_velocity(points, self.n_min, t, self.fit_method)
        else:
            raw = VelocityEstimate.invalid(n_points=0, timestamp_s=t)

        estimate = self.median_filter.update(raw)
        if not raw.valid:
            logging.debug("  No valid fit at t=%.3f (%s point(s))", t, raw.n_points)
        return FrameResult(
            timestamp_s=t,
            left_distribution=left,
            right_distribution=right,
            disparity=disparity,
            depth=depth,
            flow=flow,
            points=points,
            raw_estimate=raw,
            estimate=estimate,
            nearest=nearest,
        )
