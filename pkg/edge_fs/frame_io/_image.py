from dataclasses import dataclass

from numpy import array_equal, asarray, ndarray, uint8

from edge_fs._errors import DataError


@dataclass(frozen=True, eq=False)
class GrayImage:
    """
    8-bit grayscale image stored row-major as a read-only `(height, width)` array.

    Column index is the image coordinate `u`, row index is `v`.
    """

    width_px: int
    height_px: int
    pixels: ndarray

    def __post_init__(self):
        pixels = asarray(self.pixels)
        if pixels.dtype != uint8:
            raise DataError(f"Pixels must be uint8, got {pixels.dtype}.")
        if pixels.size != self.width_px * self.height_px:
            raise DataError(
                f"Pixel array holds {pixels.size} values, expected {self.width_px}x{self.height_px}."
            )
        pixels = pixels.reshape(self.height_px, self.width_px).copy()
        pixels.flags.writeable = False
        object.__setattr__(self, "pixels", pixels)

    @classmethod
    def from_array(cls, arr: ndarray) -> "GrayImage":
        """Wraps a `(height, width)` uint8 array."""
        arr = asarray(arr)
        if arr.ndim != 2:
            raise DataError(f"Expected a 2-D array, got shape {arr.shape}.")
        return cls(width_px=arr.shape[1], height_px=arr.shape[0], pixels=arr)

    def tobytes(self) -> bytes:
        return self.pixels.tobytes(order="C")

    def __eq__(self, other) -> bool:
        if not isinstance(other, GrayImage):
            return NotImplemented
        return (
            self.width_px == other.width_px
            and self.height_px == other.height_px
            and array_equal(self.pixels, other.pixels)
        )

    __hash__ = None


@dataclass(frozen=True)
class StereoFrame:
    """Timestamped left/right image pair with the yaw-rate gyro sample `omega_Z` taken with it."""

    timestamp_s: float
    left: GrayImage
    right: GrayImage
    gyro_z_rad_s: float = 0.0

    def __post_init__(self):
        if (self.left.width_px, self.left.height_px) != (
            self.right.width_px,
            self.right.height_px,
        ):
            raise DataError(
                "Left and right images differ in size: "
                f"{self.left.width_px}x{self.left.height_px} vs {self.right.width_px}x{self.right.height_px}."
            )
