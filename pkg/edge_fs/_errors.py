"""Exceptions raised by `edge_fs`.

Two families matter to callers: `FrameIOError` (an `OSError`) for anything that went wrong touching the
filesystem, and `DataError` (a `ValueError`) for malformed or out-of-range inputs. The CLI maps them to
distinct exit codes.
"""


class EdgeFSError(Exception):
    """Base class for all `edge_fs` errors."""


class FrameIOError(EdgeFSError, OSError):
    """Reading or writing images, manifests or logs failed."""


class DataError(EdgeFSError, ValueError):
    """Input data is malformed or out of range."""


class PGMHeaderError(DataError):
    """PGM header is malformed (magic number, tokens or maxval)."""


class PGMDimensionError(DataError):
    """PGM dimensions are non-positive or too large to allocate."""


class PGMTruncatedError(DataError):
    """PGM payload holds fewer bytes than width * height."""


class ManifestSchemaError(DataError):
    """Manifest document does not follow the manifest schema."""


class ManifestMissingFileError(DataError):
    """Manifest references an image file that does not exist."""


class NonMonotonicTimestampError(DataError):
    """Timestamps of a sequence are not strictly increasing."""


class ImageTooSmallError(DataError):
    """Image is smaller than the filter or matcher footprint."""


class MatchConfigError(DataError):
    """Block matching configuration or inputs are inconsistent."""


class InsufficientHistoryError(DataError):
    """Not enough edge distributions stored to compute flow."""


class EmptyWindowError(DataError):
    """Median filter window holds no valid estimate."""


class MetricsError(DataError):
    """Estimate and ground-truth series cannot be compared."""


class GeometryError(DataError):
    """Scene geometry or pose is invalid (degenerate segment, non-positive depth, ...)."""
