"""Ray-cast stereo rendering of a `World2D`."""
from dataclasses import dataclass
from math import cos, sin
from typing import Tuple

from numpy import abs as np_abs
from numpy import (
    arange,
    arctan,
    argmin,
    clip,
    errstate,
    full,
    inf,
    isfinite,
    nan,
    ndarray,
    rint,
    sqrt,
    uint8,
    where,
)
from numpy import cos as np_cos
from numpy import sin as np_sin
from numpy.random import default_rng

from edge_fs._errors import DataError
from edge_fs.frame_io import CameraIntrinsics, GrayImage, StereoFrame
from edge_fs.scene_sim._world import CameraPose, World2D

SUBSAMPLE_OFFSETS_PX = (-0.375, -0.125, 0.125, 0.375)
SKY_INTENSITY = 128.0
RIPPLE_AMPLITUDE = 3


@dataclass(frozen=True, eq=False)
class RenderTruth:
    """Per-column ground truth of the left camera: z-depth, ray length and whether a wall was hit."""

    depth_m: ndarray
    range_m: ndarray
    hit: ndarray


def cast_rays(world: World2D, x: float, y: float, angles: ndarray) -> Tuple[ndarray, ndarray]:
    """
    Intersects rays from `(x, y)` with every wall.

    Returns:
        tuple: (range_m, intensity) per ray; rays that hit nothing get range `inf` and the sky intensity.
    """
    if not world.contains(x, y):
        raise DataError(f"Ray origin ({x:.3f}, {y:.3f}) lies outside the world bounds {world.bounds}.")
    seg = world.segment_array()
    px, py = seg[:, 0], seg[:, 1]
    ex, ey = seg[:, 2] - px, seg[:, 3] - py
    dx, dy = np_cos(angles)[:, None], np_sin(angles)[:, None]
    wx, wy = px - x, py - y

    denom = dx * ey - dy * ex
    with errstate(divide="ignore", invalid="ignore"):
        s = (wx * ey - wy * ex) / denom
        t = (wx * dy - wy * dx) / denom
    hit = (np_abs(denom) > 1e-12) & (s > 1e-9) & (t >= 0.0) & (t <= 1.0)
    s = where(hit, s, inf)

    nearest = argmin(s, axis=1)
    rays = arange(angles.shape[0])
    range_m = s[rays, nearest]
    along = t[rays, nearest]
    intensity = full(angles.shape[0], SKY_INTENSITY)
    for idx, segment in enumerate(world.segments):
        sel = isfinite(range_m) & (nearest == idx)
        if sel.any():
            intensity[sel] = segment.texture.sample(along[sel] * segment.length_m)
    return range_m, intensity


def column_angles(intr: CameraIntrinsics, yaw_rad: float, offset_px: float = 0.0) -> ndarray:
    """World angle of the ray through every column; columns to the right look clockwise of the heading."""
    u = arange(intr.width_px) + offset_px
    return yaw_rad - arctan((u - intr.width_px / 2) / intr.focal_px)


def row_ripple(height_px: int, seed: int) -> ndarray:
    """Integer intensity offset in [-3, 3] of every row, fixed by `seed`."""
    return default_rng(seed).integers(-RIPPLE_AMPLITUDE, RIPPLE_AMPLITUDE + 1, size=height_px)


def eye_positions(pose: CameraPose, baseline_m: float):
    """World positions of the left and right cameras, half a baseline to either side of the body."""
    rx, ry = sin(pose.yaw_rad), -cos(pose.yaw_rad)
    h = baseline_m / 2
    left = (pose.pos_x_m - h * rx, pose.pos_y_m - h * ry)
    right = (pose.pos_x_m + h * rx, pose.pos_y_m + h * ry)
    return left, right


def _render_eye(world, intr, eye, yaw_rad, ripple) -> GrayImage:
    column = 0.0
    for offset in SUBSAMPLE_OFFSETS_PX:
        _, intensity = cast_rays(world, eye[0], eye[1], column_angles(intr, yaw_rad, offset))
        column = column + intensity
    column = column / len(SUBSAMPLE_OFFSETS_PX)
    pixels = clip(rint(column[None, :] + ripple[:, None]), 0, 255).astype(uint8)
    return GrayImage.from_array(pixels)


def render_stereo(
    world: World2D,
    pose: CameraPose,
    intr: CameraIntrinsics,
    seed: int = 0,
    timestamp_s: float = 0.0,
) -> Tuple[StereoFrame, RenderTruth]:
    """
    Renders the stereo pair seen from `pose`.

    Every column is the mean wall intensity of four rays spread over the pixel, plus a per-row ripple shared
    by both images. Ground truth is taken from the central ray of the left camera; depth is measured along
    its optical axis.

    Args:
        world (World2D): Scene.
        pose (CameraPose): Body pose; its yaw rate becomes the gyro sample.
        intr (CameraIntrinsics): Camera of both eyes.
        seed (int): Seed of the row ripple.
        timestamp_s (float): Time stamped on the frame.

    Returns:
        tuple: (StereoFrame, RenderTruth).

    Raises:
        DataError: The pose lies outside the world bounds.
    """
    if not world.contains(pose.pos_x_m, pose.pos_y_m):
        raise DataError(
            f"Pose ({pose.pos_x_m:.3f}, {pose.pos_y_m:.3f}) lies outside the bounds {world.bounds} of {world.name}."
        )
    left_eye, right_eye = eye_positions(pose, intr.baseline_m)
    ripple = row_ripple(intr.height_px, seed)
    left = _render_eye(world, intr, left_eye, pose.yaw_rad, ripple)
    right = _render_eye(world, intr, right_eye, pose.yaw_rad, ripple)

    range_m, _ = cast_rays(world, left_eye[0], left_eye[1], column_angles(intr, pose.yaw_rad))
    hit = isfinite(range_m)
    x_norm = intr.normalized_columns()
    depth = where(hit, range_m / sqrt(1.0 + x_norm**2), nan)
    truth = RenderTruth(depth_m=depth, range_m=where(hit, range_m, nan), hit=hit)
    frame = StereoFrame(
        timestamp_s=timestamp_s, left=left, right=right, gyro_z_rad_s=pose.yaw_rate_rad_s
    )
    return frame, truth
