import logging
from pathlib import Path
from typing import Sequence, Union

from tqdm import tqdm

from edge_fs._errors import FrameIOError
from edge_fs.frame_io import (
    CameraIntrinsics,
    FrameRecord,
    GroundTruth,
    SequenceManifest,
    save_manifest,
    save_pgm,
)
from edge_fs.scene_sim._render import render_stereo
from edge_fs.scene_sim._trajectory import FRAME_RATE_HZ
from edge_fs.scene_sim._world import CameraPose, World2D

MANIFEST_NAME = "manifest.json"


def generate_sequence(
    world: World2D,
    trajectory: Sequence[CameraPose],
    intr: CameraIntrinsics,
    seed: int,
    out_dir: Union[str, Path],
    rate_hz: float = FRAME_RATE_HZ,
    progress: bool = True,
) -> SequenceManifest:
    """
    Renders a trajectory to PGM files plus a manifest with ground truth.

    Frame `i` is stamped `i / rate_hz`. Images go to `out_dir/frames/`, the manifest to
    `out_dir/manifest.json`.

    Returns:
        SequenceManifest: The manifest as written, rooted at `out_dir`.
    """
    out_dir = Path(out_dir)
    try:
        (out_dir / "frames").mkdir(parents=True, exist_ok=True)
    except OSError as err:
        raise FrameIOError(f'Could not create "{out_dir}": {err}') from err

    records = []
    for i, pose in enumerate(
        tqdm(trajectory, desc="Rendering frames:", disable=not progress)
    ):
        t = i / rate_hz
        frame, _ = render_stereo(world, pose, intr, seed=seed, timestamp_s=t)
        left_path = Path("frames") / f"left_{i:05d}.pgm"
        right_path = Path("frames") / f"right_{i:05d}.pgm"
        save_pgm(frame.left, out_dir / left_path)
        save_pgm(frame.right, out_dir / right_path)
        records.append(
            FrameRecord(
                timestamp_s=t,
                left_path=left_path,
                right_path=right_path,
                gyro_z_rad_s=pose.yaw_rate_rad_s,
                ground_truth=GroundTruth(
                    vx_m_s=pose.vx_m_s,
                    vy_m_s=pose.vy_m_s,
                    yaw_rad=pose.yaw_rad,
                    pos_x_m=pose.pos_x_m,
                    pos_y_m=pose.pos_y_m,
                ),
            )
        )

    manifest = SequenceManifest(intrinsics=intr, frames=tuple(records), root=out_dir)
    save_manifest(manifest, out_dir / MANIFEST_NAME)
    logging.info('  Wrote %s frame(s) of "%s" to "%s"', len(records), world.name, out_dir)
    return manifest
