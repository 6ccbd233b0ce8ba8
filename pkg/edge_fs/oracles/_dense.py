from dataclasses import dataclass

from numpy import abs as np_abs
from numpy import arange, float64, full, inf, int64, maximum, ndarray, roll, zeros
from scipy.ndimage import uniform_filter

from edge_fs._errors import ImageTooSmallError, MatchConfigError
from edge_fs.block_matcher import MatchConfig
from edge_fs.frame_io import GrayImage


@dataclass(frozen=True, eq=False)
class DenseFlowField:
    """
    2-D block-matching displacements on a coarse grid.

    `du[r, c]`, `dv[r, c]` belong to the pixel `(rows[r], cols[c])`; `frame_a[y, x] ~ frame_b[y + dv, x + du]`.
    """

    rows: ndarray
    cols: ndarray
    du: ndarray
    dv: ndarray
    valid: ndarray


def dense_block_flow(
    frame_a: GrayImage, frame_b: GrayImage, cfg: MatchConfig = MatchConfig()
) -> DenseFlowField:
    """
    Exhaustive 2-D SAD block matching over `+-search_range_px` in both directions.

    Block centers lie on a grid with a step of one window, covering the image minus the border of range plus
    half a window. Equal costs resolve to the displacement closest to zero. A cell is invalid when every
    candidate costs the same.
    """
    if (frame_a.width_px, frame_a.height_px) != (frame_b.width_px, frame_b.height_px):
        raise MatchConfigError("Dense flow needs frames of equal size.")
    rng = cfg.search_range_px
    border = rng + cfg.half_window_px
    if 2 * border >= min(frame_a.width_px, frame_a.height_px):
        raise ImageTooSmallError(
            f"A {frame_a.width_px}x{frame_a.height_px} image is too small for range {rng} "
            f"and window {cfg.window_px}."
        )
    rows = arange(border, frame_a.height_px - border, cfg.window_px)
    cols = arange(border, frame_a.width_px - border, cfg.window_px)

    a = frame_a.pixels.astype(float64)
    b = frame_b.pixels.astype(float64)
    best = full((rows.size, cols.size), inf)
    worst = full((rows.size, cols.size), -inf)
    du = zeros((rows.size, cols.size), dtype=int64)
    dv = zeros((rows.size, cols.size), dtype=int64)
    candidates = sorted(
        ((x, y) for x in range(-rng, rng + 1) for y in range(-rng, rng + 1)),
        key=lambda c: (c[0] ** 2 + c[1] ** 2, c[0], c[1]),
    )
    for x_off, y_off in candidates:
        # windows around grid centers never reach the wrapped-around pixels
        moved = roll(b, shift=(-y_off, -x_off), axis=(0, 1))
        sad = uniform_filter(np_abs(a - moved), size=cfg.window_px)[rows][:, cols]
        better = sad < best
        best[better] = sad[better]
        du[better] = x_off
        dv[better] = y_off
        worst = maximum(worst, sad)
    return DenseFlowField(rows=rows, cols=cols, du=du, dv=dv, valid=worst > best)
