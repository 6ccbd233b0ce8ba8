import logging
from typing import Optional

from numpy import nan
from pandas import DataFrame
from tqdm import tqdm

from edge_fs.frame_io import SequenceManifest
from edge_fs.pipeline._pipeline import EdgeFSPipeline
from edge_fs.velocity_estimator import align_to_ground_truth, estimates_to_dataframe


def run_sequence(
    manifest: SequenceManifest,
    pipeline: Optional[EdgeFSPipeline] = None,
    progress: bool = True,
) -> DataFrame:
    """
    Runs the pipeline over every frame of a sequence.

    Args:
        manifest (SequenceManifest): Sequence to process.
        pipeline (EdgeFSPipeline): Configured pipeline; a default one for the manifest intrinsics otherwise.
        progress (bool): Show a progress bar.

    Returns:
        DataFrame: Estimate table (median-filtered) with "mean_depth_m" and "nearest_m" columns, aligned to
            ground truth when the manifest has it.
    """
    if pipeline is None:
        pipeline = EdgeFSPipeline(manifest.intrinsics)
    else:
        pipeline.reset()

    estimates, mean_depth, nearest = [], [], []
    for frame in tqdm(
        manifest.iter_frames(),
        total=len(manifest),
        desc="Estimating velocity:",
        disable=not progress,
    ):
        result = pipeline.process(frame)
        estimates.append(result.estimate)
        mean_depth.append(result.mean_depth_m)
        nearest.append(nan if result.nearest is None else result.nearest.distance_m)

    df = estimates_to_dataframe(estimates, mean_depth_m=mean_depth)
    df["nearest_m"] = nearest
    n_valid = int(df["vx_est"].notna().sum())
    logging.info("  %s of %s frame(s) gave a valid estimate", n_valid, len(df))
    if not manifest.has_ground_truth:
        return df

    df_gt = manifest.to_dataframe()
    tolerance_s = 0.5 * float(df_gt["t"].diff().min()) if len(df_gt) > 1 else 0.0
    return align_to_ground_truth(df, df_gt, tolerance_s=tolerance_s)
