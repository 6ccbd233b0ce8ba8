"""Horizontal Sobel gradient of a grayscale image."""
from numpy import int32, ndarray
from scipy.ndimage import sobel

from edge_fs._errors import ImageTooSmallError
from edge_fs.frame_io import GrayImage

MIN_SIZE_PX = 3


def sobel_horizontal(img: GrayImage) -> ndarray:
    """
    Signed horizontal gradient, correlating each pixel with [[-1, 0, 1], [-2, 0, 2], [-1, 0, 1]].

    The first and last columns are set to 0. The top and bottom rows are computed with the nearest row
    replicated, so a vertical edge contributes the same magnitude on every row.

    Args:
        img (GrayImage): Input image, at least 3x3.

    Returns:
        ndarray: int32 array of shape (height_px, width_px). Magnitudes are bounded by 4 * 255 = 1020.
    """
    if img.width_px < MIN_SIZE_PX or img.height_px < MIN_SIZE_PX:
        raise ImageTooSmallError(
            f"Sobel filter needs at least {MIN_SIZE_PX}x{MIN_SIZE_PX} pixels, got {img.width_px}x{img.height_px}."
        )
    # nearest-row padding keeps the top and bottom rows at full weight (a step sums to 96 * 4 * 255),
    # at the cost of counting replicated border texture twice
    grad = sobel(img.pixels.astype(int32), axis=1, mode="nearest")
    grad[:, 0] = 0
    grad[:, -1] = 0
    return grad
