"""Run configuration shared by the CLI subcommands, and the JSON config file that can preset it."""
import json
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Optional, Tuple, Union

from jsonschema import Draft7Validator

from edge_fs._errors import DataError, FrameIOError
from edge_fs.block_matcher import MatchConfig
from edge_fs.frame_io import CameraIntrinsics, get_intrinsics_preset
from edge_fs.nav_sim import NavConfig

SUBCOMMANDS = ("gen", "estimate", "navsim", "bench", "metrics")

_INT = {"type": "integer"}
_NUM = {"type": "number"}
_STR = {"type": "string"}

CONFIG_SCHEMA = {
    "type": "object",
    "additionalProperties": False,
    "properties": {
        "seed": _INT,
        "preset": _STR,
        "out": _STR,
        "intrinsics": _STR,
        "baseline": _NUM,
        "manifest": _STR,
        "motion": _STR,
        "seconds": _NUM,
        "distance": _NUM,
        "window": {"type": "array", "items": _INT, "minItems": 1},
        "search_range": _INT,
        "fit": {"enum": ["ols", "theil-sen"]},
        "n_min": _INT,
        "episodes": _INT,
        "max_seconds": _NUM,
        "cruise": _NUM,
        "turn_direction": {"enum": ["positive", "random"]},
        "turn_until_clear": {"type": "boolean"},
        "frames": _INT,
        "csv": _STR,
    },
}


def load_config_file(path: Union[str, Path]) -> dict:
    """
    Reads a JSON run configuration whose keys are the CLI option names (dashes as underscores).

    Raises:
        FrameIOError: The file cannot be read.
        DataError: The file is not JSON or does not follow `CONFIG_SCHEMA`.
    """
    try:
        text = Path(path).read_text()
    except OSError as err:
        raise FrameIOError(f'Could not read config "{path}": {err}') from err
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as err:
        raise DataError(f'Config "{path}" is not valid JSON: {err}') from err
    errors = sorted(Draft7Validator(CONFIG_SCHEMA).iter_errors(doc), key=str)
    if errors:
        raise DataError(f'Config "{path}" is invalid: {errors[0].message}')
    return doc


@dataclass(frozen=True)
class RunConfig:
    """
    Resolved settings of one CLI invocation.

    Args:
        subcommand (str): One of `SUBCOMMANDS`.
        seed (int): Seed of every random choice of the run.
        out (Path): Output directory.
        preset (str): World preset (gen, navsim; estimate and bench without a manifest).
        manifest (Path): Input manifest (optional for estimate and bench, which then render `preset`).
        intrinsics_preset (str): Camera preset name.
        baseline_m (float): Overrides the preset's stereo baseline.
        match (MatchConfig): Matcher settings.
        windows (tuple): SAD window sizes to evaluate (estimate).
        nav (NavConfig): Avoidance settings (navsim).
        repetitions (int): Episodes (navsim) or frames (bench).
    """

    subcommand: str
    seed: int = field(default=0)
    out: Optional[Path] = field(default=None)
    preset: Optional[str] = field(default=None)
    manifest: Optional[Path] = field(default=None)
    intrinsics_preset: str = field(default="delfly-stereoboard")
    baseline_m: Optional[float] = field(default=None)
    match: MatchConfig = field(default_factory=MatchConfig)
    windows: Tuple[int, ...] = field(default=(11,))
    nav: NavConfig = field(default_factory=NavConfig)
    repetitions: int = field(default=1)

    def __post_init__(self):
        if self.subcommand not in SUBCOMMANDS:
            raise DataError(f'Unknown subcommand "{self.subcommand}".')
        if self.subcommand == "estimate" and self.manifest is None and self.preset is None:
            raise DataError("estimate requires a manifest or a world preset.")
        if self.subcommand in ("gen", "navsim") and self.preset is None:
            raise DataError(f"{self.subcommand} requires a world preset.")
        if self.repetitions < 1:
            raise DataError(f"Repetition count must be at least 1, got {self.repetitions}.")

    @property
    def intrinsics(self) -> CameraIntrinsics:
        base = get_intrinsics_preset(self.intrinsics_preset)
        if self.baseline_m is None:
            return base
        return CameraIntrinsics(
            width_px=base.width_px,
            height_px=base.height_px,
            fov_h_rad=base.fov_h_rad,
            fov_v_rad=base.fov_v_rad,
            baseline_m=self.baseline_m,
        )

    def match_for_window(self, window_px: int) -> MatchConfig:
        return replace(self.match, window_px=window_px)
