import logging
from dataclasses import dataclass
from math import floor
from typing import Optional

from numpy import abs as np_abs
from numpy import median, nan, ndarray, where

from edge_fs._errors import InsufficientHistoryError
from edge_fs.block_matcher import MatchConfig, match_profiles
from edge_fs.edge_flow._history import DistributionHistory
from edge_fs.frame_io import CameraIntrinsics

TARGET_DISPLACEMENT_PX = 3.0
MIN_FLOW_PX = 0.05


@dataclass(frozen=True, eq=False)
class FlowProfile:
    """
    Per-column optical flow of one frame, in pixels per second.

    `flow_px_s` is the measured flow `o_u`, `rotational_px_s` the yaw-induced part `o^R_u` (the same for every
    column) and `translational_px_s` their difference `o^T_u`. Columns that are not `valid` hold `NaN`.
    """

    flow_px_s: ndarray
    translational_px_s: ndarray
    rotational_px_s: float
    valid: ndarray
    horizon_frames: int
    elapsed_s: float
    displacement_px: ndarray

    def per_frame_displacement_px(self) -> Optional[float]:
        """Median |displacement| of valid columns divided by the horizon; None without valid columns."""
        if not self.valid.any():
            return None
        return float(median(np_abs(self.displacement_px[self.valid]))) / self.horizon_frames


def derotation_flow(gyro_z_rad_s: float, intr: CameraIntrinsics) -> float:
    """Flow in px/s induced by a yaw rate: `omega_Z * w / alpha_FOV`, the same for every column."""
    return gyro_z_rad_s * intr.width_px / intr.fov_h_rad


def select_horizon(prev_flow_px_per_frame: Optional[float], history: DistributionHistory) -> int:
    """
    Number of frames to look back so the expected displacement is about 3 px.

    `n = round(3 / max(|p|, 0.05))`, clamped to `[1, len(history) - 1]`; `None` counts as zero flow.
    """
    if len(history) < 2:
        raise InsufficientHistoryError(f"Flow needs at least 2 distributions, history holds {len(history)}.")
    p = 0.0 if prev_flow_px_per_frame is None else abs(prev_flow_px_per_frame)
    n = int(floor(TARGET_DISPLACEMENT_PX / max(p, MIN_FLOW_PX) + 0.5))
    return min(max(n, 1), len(history) - 1)


def compute_flow(
    history: DistributionHistory,
    gyro_z_rad_s: float,
    intr: CameraIntrinsics,
    cfg: MatchConfig = MatchConfig(),
    prev_flow_px_per_frame: Optional[float] = None,
) -> FlowProfile:
    """
    Derotated flow between the newest distribution and the one `n` frames back.

    The search of every column starts at the rounded shift the yaw rate predicts over the elapsed time; the
    sub-pixel remainder of the rotation is removed by subtracting the rotational flow afterwards.

    Args:
        history (DistributionHistory): At least 2 distributions; not modified.
        gyro_z_rad_s (float): Yaw rate at the newest frame.
        intr (CameraIntrinsics): Camera of the distributions.
        cfg (MatchConfig): Matcher settings.
        prev_flow_px_per_frame (float): Overrides `history.prev_flow_px_per_frame` for the horizon choice.

    Returns:
        FlowProfile: Measured, rotational and translational flow; confident matcher columns are valid.
    """
    if prev_flow_px_per_frame is None:
        prev_flow_px_per_frame = history.prev_flow_px_per_frame
    n = select_horizon(prev_flow_px_per_frame, history)
    ref = history.back(n)
    target = history.latest
    elapsed_s = target.source_timestamp_s - ref.source_timestamp_s

    rotational = derotation_flow(gyro_z_rad_s, intr)
    shift_px = int(round(rotational * elapsed_s))
    match = match_profiles(ref, target, cfg, shift_px=shift_px)

    valid = match.confident
    displacement = where(valid, match.displacement_px, nan)
    flow = displacement / elapsed_s
    logging.debug(
        "  Flow at t=%.3f: horizon %s, shift %s px, %s valid column(s)",
        target.source_timestamp_s,
        n,
        shift_px,
        int(valid.sum()),
    )
    return FlowProfile(
        flow_px_s=flow,
        translational_px_s=flow - rotational,
        rotational_px_s=rotational,
        valid=valid,
        horizon_frames=n,
        elapsed_s=elapsed_s,
        displacement_px=displacement,
    )
