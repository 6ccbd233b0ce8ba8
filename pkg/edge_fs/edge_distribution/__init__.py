"""Compression of grayscale images into horizontal edge distributions."""
from ._distribution import EdgeDistribution, compress, edge_distribution
from ._sobel import sobel_horizontal

__all__ = [
    "EdgeDistribution",
    "compress",
    "edge_distribution",
    "sobel_horizontal",
]
