"""Edge-FS: velocity and depth from edge distributions of a low-resolution stereo camera."""

from edge_fs._version import __version__

__all__ = ["__version__"]
