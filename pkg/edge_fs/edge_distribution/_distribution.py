from dataclasses import dataclass, field

from numpy import abs as np_abs
from numpy import array_equal, asarray, int64, ndarray

from edge_fs._errors import DataError
from edge_fs.edge_distribution._sobel import sobel_horizontal
from edge_fs.frame_io import GrayImage


@dataclass(frozen=True, eq=False)
class EdgeDistribution:
    """
    Column-wise sum of absolute horizontal gradients of one image.

    `values[i]` depends only on image columns i-1..i+1. Values are raw (unnormalized) int64 sums.
    """

    values: ndarray
    source_timestamp_s: float = field(default=0.0)

    def __post_init__(self):
        values = asarray(self.values)
        if values.ndim != 1:
            raise DataError(f"Edge distribution must be 1-D, got shape {values.shape}.")
        if values.size and values.min() < 0:
            raise DataError("Edge distribution entries must be non-negative.")
        values = values.astype(int64, copy=True)
        values.flags.writeable = False
        object.__setattr__(self, "values", values)

    def __len__(self) -> int:
        return self.values.shape[0]

    def __eq__(self, other) -> bool:
        if not isinstance(other, EdgeDistribution):
            return NotImplemented
        return self.source_timestamp_s == other.source_timestamp_s and array_equal(self.values, other.values)

    __hash__ = None


def compress(gradient: ndarray, source_timestamp_s: float = 0.0) -> EdgeDistribution:
    """Sums |gradient| over rows into an `EdgeDistribution` (64-bit accumulation)."""
    gradient = asarray(gradient)
    if gradient.ndim != 2:
        raise DataError(f"Gradient image must be 2-D, got shape {gradient.shape}.")
    return EdgeDistribution(
        values=np_abs(gradient.astype(int64)).sum(axis=0),
        source_timestamp_s=source_timestamp_s,
    )


def edge_distribution(img: GrayImage, source_timestamp_s: float = 0.0) -> EdgeDistribution:
    """Sobel followed by compression; the per-frame reduction used by flow and stereo."""
    return compress(sobel_horizontal(img), source_timestamp_s=source_timestamp_s)
