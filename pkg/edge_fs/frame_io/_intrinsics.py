from dataclasses import dataclass, field
from math import degrees, pi, radians

from numpy import arange, ndarray

from edge_fs._errors import DataError


@dataclass(frozen=True)
class CameraIntrinsics:
    """
    Camera parameters shared by every stage of the pipeline.

    The focal length is derived with the small-angle relation `f = w / alpha_FOV` and is stored so it can be
    re-checked with `check_focal()`.

    Args:
        width_px (int): Image width `w`.
        height_px (int): Image height.
        fov_h_rad (float): Horizontal field of view `alpha_FOV` in radians.
        fov_v_rad (float): Vertical field of view in radians.
        baseline_m (float): Stereo baseline `r` in meters.
    """

    width_px: int
    height_px: int
    fov_h_rad: float
    fov_v_rad: float
    baseline_m: float
    focal_px: float = field(init=False)

    def __post_init__(self):
        if self.width_px <= 0 or self.height_px <= 0:
            raise DataError(
                f"Image dimensions must be positive, got {self.width_px}x{self.height_px}."
            )
        if not 0 < self.fov_h_rad < pi:
            raise DataError(f"Horizontal FOV must lie in (0, pi), got {self.fov_h_rad}.")
        if not 0 < self.fov_v_rad < pi:
            raise DataError(f"Vertical FOV must lie in (0, pi), got {self.fov_v_rad}.")
        if self.baseline_m <= 0:
            raise DataError(f"Baseline must be positive, got {self.baseline_m}.")
        object.__setattr__(self, "focal_px", self.width_px / self.fov_h_rad)

    @classmethod
    def from_degrees(
        cls,
        width_px: int,
        height_px: int,
        fov_h_deg: float,
        fov_v_deg: float,
        baseline_m: float,
    ) -> "CameraIntrinsics":
        """Builds intrinsics from fields of view given in degrees (the manifest unit)."""
        return cls(
            width_px=int(width_px),
            height_px=int(height_px),
            fov_h_rad=radians(fov_h_deg),
            fov_v_rad=radians(fov_v_deg),
            baseline_m=float(baseline_m),
        )

    def to_manifest_dict(self) -> dict:
        return {
            "width_px": self.width_px,
            "height_px": self.height_px,
            "fov_h_deg": degrees(self.fov_h_rad),
            "fov_v_deg": degrees(self.fov_v_rad),
            "baseline_m": self.baseline_m,
        }

    def normalized_columns(self) -> ndarray:
        """Normalized image coordinate `x = (u - w / 2) / f` of every column `u`."""
        return (arange(self.width_px) - self.width_px / 2) / self.focal_px

    def check_focal(self) -> bool:
        """True if the stored focal length equals `width_px / fov_h_rad`."""
        return self.focal_px == self.width_px / self.fov_h_rad


# 57.4 deg is the offline-dataset value; the on-board description quotes 57.5 deg for the same board.
INTRINSICS_PRESETS = {
    "delfly-stereoboard": CameraIntrinsics.from_degrees(
        width_px=128, height_px=96, fov_h_deg=57.4, fov_v_deg=44.5, baseline_m=0.06
    ),
}


def get_intrinsics_preset(name: str = "delfly-stereoboard") -> CameraIntrinsics:
    """Looks up a named intrinsics preset."""
    if name not in INTRINSICS_PRESETS:
        raise DataError(
            f'Unknown intrinsics preset "{name}"; choose one of {sorted(INTRINSICS_PRESETS)}.'
        )
    return INTRINSICS_PRESETS[name]
