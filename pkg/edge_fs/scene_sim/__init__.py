"""Synthetic stereo worlds: textured floor plans ray-cast into stereo frames with ground truth."""
from ._dataset import MANIFEST_NAME, generate_sequence
from ._render import RenderTruth, cast_rays, eye_positions, render_stereo, row_ripple
from ._trajectory import FRAME_RATE_HZ, MOTION_KINDS, Motion, scripted_trajectory
from ._world import (
    WORLD_PRESETS,
    CameraPose,
    WallSegment,
    WallTexture,
    World2D,
    build_world,
    poster_texture,
)

__all__ = [
    # World
    "CameraPose",
    "WallSegment",
    "WallTexture",
    "World2D",
    "WORLD_PRESETS",
    "build_world",
    "poster_texture",
    # Rendering
    "RenderTruth",
    "cast_rays",
    "eye_positions",
    "render_stereo",
    "row_ripple",
    # Trajectories
    "FRAME_RATE_HZ",
    "MOTION_KINDS",
    "Motion",
    "scripted_trajectory",
    # Datasets
    "MANIFEST_NAME",
    "generate_sequence",
]
