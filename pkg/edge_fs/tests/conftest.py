import os

import pytest
from numpy import nanmedian
from numpy.random import default_rng
from pandas import DataFrame

from edge_fs.frame_io import get_intrinsics_preset
from edge_fs.pipeline import EdgeFSPipeline
from edge_fs.scene_sim import (
    FRAME_RATE_HZ,
    Motion,
    build_world,
    generate_sequence,
    render_stereo,
    scripted_trajectory,
)


@pytest.fixture(scope="session")
def intr():
    yield get_intrinsics_preset()


@pytest.fixture(scope="session")
def timing_tolerance():
    """Factor applied to wall-clock bounds; set EDGE_FS_TIMING_TOLERANCE on slower hosts."""
    yield float(os.environ.get("EDGE_FS_TIMING_TOLERANCE", "1.0"))


@pytest.fixture(scope="function")
def rng():
    yield default_rng(0)


@pytest.fixture(scope="session")
def simulate():
    """
    Renders a scripted motion in memory and runs the pipeline over it.

    Returns a callable giving (DataFrame, list of FrameResult); the frame has one row per frame with t,
    vx_est, vy_est, vx_gt, vy_gt, mean_depth_m and true_depth_m (median ground-truth depth).
    """

    def _simulate(preset, motion, seconds, seed=0, pipeline=None, **world_kwargs):
        intr = get_intrinsics_preset()
        world, start = build_world(preset, seed=seed, **world_kwargs)
        pipeline = EdgeFSPipeline(intr) if pipeline is None else pipeline
        rows, results = [], []
        for i, pose in enumerate(scripted_trajectory(Motion.parse(motion), start, seconds)):
            t = i / FRAME_RATE_HZ
            frame, truth = render_stereo(world, pose, intr, seed=seed, timestamp_s=t)
            result = pipeline.process(frame)
            rows.append(
                {
                    "t": t,
                    "vx_est": result.estimate.vx_m_s,
                    "vy_est": result.estimate.vy_m_s,
                    "vx_gt": pose.vx_m_s,
                    "vy_gt": pose.vy_m_s,
                    "mean_depth_m": result.mean_depth_m,
                    "true_depth_m": float(nanmedian(truth.depth_m)),
                }
            )
            results.append(result)
        return DataFrame(rows), results

    yield _simulate


@pytest.fixture(scope="session")
def lateral_dataset(tmp_path_factory):
    """One second of sideways flight at 0.3 m/s past a wall 1 m ahead, written to disk."""
    out_dir = tmp_path_factory.mktemp("lateral")
    world, start = build_world("flat-wall", seed=7)
    poses = scripted_trajectory(Motion("lateral", 0.3), start, 1.0)
    yield generate_sequence(
        world, poses, get_intrinsics_preset(), seed=7, out_dir=out_dir, progress=False
    )
