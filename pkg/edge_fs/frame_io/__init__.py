"""Stereo frames, camera parameters, PGM images and JSON sequence manifests."""
from ._image import GrayImage, StereoFrame
from ._intrinsics import INTRINSICS_PRESETS, CameraIntrinsics, get_intrinsics_preset
from ._manifest import (
    FrameRecord,
    GroundTruth,
    SequenceManifest,
    check_monotonic,
    load_manifest,
    save_manifest,
)
from ._pgm import load_pgm, read_pgm_header, save_pgm

__all__ = [
    # Types
    "CameraIntrinsics",
    "GrayImage",
    "StereoFrame",
    "GroundTruth",
    "FrameRecord",
    "SequenceManifest",
    # Presets
    "INTRINSICS_PRESETS",
    "get_intrinsics_preset",
    # PGM
    "load_pgm",
    "save_pgm",
    "read_pgm_header",
    # Manifest
    "check_monotonic",
    "load_manifest",
    "save_manifest",
]
