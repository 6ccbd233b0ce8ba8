"""JSON sequence manifest: intrinsics plus an ordered list of stereo frames stored as PGM files."""
import json
import logging
from dataclasses import dataclass
from math import degrees, radians
from pathlib import Path
from typing import Iterator, Optional, Tuple, Union

from jsonschema import Draft7Validator
from pandas import DataFrame

from edge_fs._errors import (
    DataError,
    FrameIOError,
    ManifestMissingFileError,
    ManifestSchemaError,
    NonMonotonicTimestampError,
)
from edge_fs.frame_io._image import StereoFrame
from edge_fs.frame_io._intrinsics import CameraIntrinsics
from edge_fs.frame_io._pgm import load_pgm, read_pgm_header

_NUMBER = {"type": "number"}

MANIFEST_SCHEMA = {
    "type": "object",
    "required": ["intrinsics", "frames"],
    "properties": {
        "intrinsics": {
            "type": "object",
            "required": ["width_px", "height_px", "fov_h_deg", "fov_v_deg", "baseline_m"],
            "properties": {
                "width_px": {"type": "integer", "minimum": 1},
                "height_px": {"type": "integer", "minimum": 1},
                "fov_h_deg": _NUMBER,
                "fov_v_deg": _NUMBER,
                "baseline_m": _NUMBER,
            },
        },
        "frames": {
            "type": "array",
            "minItems": 1,
            "items": {
                "type": "object",
                "required": ["t", "left", "right", "gyro_z"],
                "properties": {
                    "t": _NUMBER,
                    "left": {"type": "string"},
                    "right": {"type": "string"},
                    "gyro_z": _NUMBER,
                    "gt": {
                        "type": "object",
                        "required": ["vx", "vy", "yaw", "x", "y"],
                        "properties": {k: _NUMBER for k in ["vx", "vy", "yaw", "x", "y"]},
                    },
                },
            },
        },
    },
}


@dataclass(frozen=True)
class GroundTruth:
    """Reference motion of the camera body at a frame (body-frame velocity, world-frame pose)."""

    vx_m_s: float
    vy_m_s: float
    yaw_rad: float
    pos_x_m: float
    pos_y_m: float


@dataclass(frozen=True)
class FrameRecord:
    timestamp_s: float
    left_path: Path
    right_path: Path
    gyro_z_rad_s: float
    ground_truth: Optional[GroundTruth] = None


@dataclass(frozen=True)
class SequenceManifest:
    """
    A stereo sequence on disk.

    Image paths in `frames` are relative to `root` (the directory holding the manifest file).
    """

    intrinsics: CameraIntrinsics
    frames: Tuple[FrameRecord, ...]
    root: Path = Path(".")

    @property
    def has_ground_truth(self) -> bool:
        return len(self.frames) > 0 and self.frames[0].ground_truth is not None

    def __len__(self) -> int:
        return len(self.frames)

    def load_frame(self, idx: int) -> StereoFrame:
        """Reads the left/right images of frame `idx`."""
        rec = self.frames[idx]
        return StereoFrame(
            timestamp_s=rec.timestamp_s,
            left=load_pgm(self.root / rec.left_path),
            right=load_pgm(self.root / rec.right_path),
            gyro_z_rad_s=rec.gyro_z_rad_s,
        )

    def iter_frames(self) -> Iterator[StereoFrame]:
        for idx in range(len(self.frames)):
            yield self.load_frame(idx)

    def to_dataframe(self) -> DataFrame:
        """One row per frame with timestamp, gyro and (if present) ground-truth columns."""
        rows = []
        for rec in self.frames:
            row = {"t": rec.timestamp_s, "gyro_z": rec.gyro_z_rad_s}
            if rec.ground_truth is not None:
                gt = rec.ground_truth
                row.update(
                    {
                        "vx_gt": gt.vx_m_s,
                        "vy_gt": gt.vy_m_s,
                        "yaw_gt": gt.yaw_rad,
                        "x_gt": gt.pos_x_m,
                        "y_gt": gt.pos_y_m,
                    }
                )
            rows.append(row)
        return DataFrame(rows)


def _record_from_dict(frame: dict) -> FrameRecord:
    gt = frame.get("gt")
    return FrameRecord(
        timestamp_s=float(frame["t"]),
        left_path=Path(frame["left"]),
        right_path=Path(frame["right"]),
        gyro_z_rad_s=radians(frame["gyro_z"]),
        ground_truth=None
        if gt is None
        else GroundTruth(
            vx_m_s=float(gt["vx"]),
            vy_m_s=float(gt["vy"]),
            yaw_rad=radians(gt["yaw"]),
            pos_x_m=float(gt["x"]),
            pos_y_m=float(gt["y"]),
        ),
    )


def check_monotonic(timestamps) -> None:
    """Raises `NonMonotonicTimestampError` unless `timestamps` strictly increase."""
    for idx in range(1, len(timestamps)):
        if not timestamps[idx] > timestamps[idx - 1]:
            raise NonMonotonicTimestampError(
                f"Timestamp {timestamps[idx]} at frame {idx} does not follow {timestamps[idx - 1]}."
            )


def load_manifest(path: Union[str, Path]) -> SequenceManifest:
    """
    Loads and validates a sequence manifest.

    Validation covers the JSON schema, the all-or-none ground-truth rule, strictly increasing timestamps,
    existence of every referenced image and agreement of image dimensions with the intrinsics. Angles are
    stored in degrees (deg, deg/s) and converted to radians here.

    Args:
        path (str or Path): Manifest JSON file.

    Returns:
        SequenceManifest: The validated manifest; image paths stay relative to the manifest directory.
    """
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as err:
        raise FrameIOError(f'Could not read manifest "{path}": {err}') from err
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as err:
        raise ManifestSchemaError(f'Manifest "{path}" is not valid JSON: {err}') from err

    errors = sorted(Draft7Validator(MANIFEST_SCHEMA).iter_errors(doc), key=str)
    if errors:
        raise ManifestSchemaError(f'Manifest "{path}" violates the schema: {errors[0].message}')

    n_gt = sum("gt" in frame for frame in doc["frames"])
    if 0 < n_gt < len(doc["frames"]):
        raise ManifestSchemaError(
            f"Ground truth must be given for all frames or none ({n_gt} of {len(doc['frames'])} have it)."
        )

    try:
        intrinsics = CameraIntrinsics.from_degrees(**doc["intrinsics"])
    except (DataError, TypeError) as err:
        raise ManifestSchemaError(f"Invalid intrinsics in manifest: {err}") from err

    records = tuple(_record_from_dict(frame) for frame in doc["frames"])
    check_monotonic([rec.timestamp_s for rec in records])

    root = path.parent
    for rec in records:
        for img_path in (rec.left_path, rec.right_path):
            full = root / img_path
            if not full.is_file():
                raise ManifestMissingFileError(f'Image "{full}" referenced by the manifest does not exist.')
            width, height = read_pgm_header(full)
            if (width, height) != (intrinsics.width_px, intrinsics.height_px):
                raise ManifestSchemaError(
                    f'Image "{full}" is {width}x{height}, intrinsics say '
                    f"{intrinsics.width_px}x{intrinsics.height_px}."
                )

    logging.info('  Loaded manifest "%s": %s frame(s)', path, len(records))
    return SequenceManifest(intrinsics=intrinsics, frames=records, root=root)


def save_manifest(manifest: SequenceManifest, path: Union[str, Path]) -> None:
    """Writes `manifest` as JSON; image paths are written relative to the manifest directory."""
    frames = []
    for rec in manifest.frames:
        frame = {
            "t": rec.timestamp_s,
            "left": rec.left_path.as_posix(),
            "right": rec.right_path.as_posix(),
            "gyro_z": degrees(rec.gyro_z_rad_s),
        }
        if rec.ground_truth is not None:
            gt = rec.ground_truth
            frame["gt"] = {
                "vx": gt.vx_m_s,
                "vy": gt.vy_m_s,
                "yaw": degrees(gt.yaw_rad),
                "x": gt.pos_x_m,
                "y": gt.pos_y_m,
            }
        frames.append(frame)
    doc = {"intrinsics": manifest.intrinsics.to_manifest_dict(), "frames": frames}
    try:
        Path(path).write_text(json.dumps(doc, indent=2))
    except OSError as err:
        raise FrameIOError(f'Could not write manifest "{path}": {err}') from err
