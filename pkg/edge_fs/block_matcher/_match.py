"""
SAD block matching of two edge distributions.

Sign convention, shared by flow and stereo: the displacement `k` of column `i` is the offset that aligns the
target with the reference, `ref[i] ~ target[i + k]`. Content that moved right between reference and target
therefore has a positive displacement.
"""
from dataclasses import dataclass
from typing import Optional, Tuple, Union

from numpy import abs as np_abs
from numpy import (
    arange,
    argmin,
    asarray,
    clip,
    float64,
    full,
    inf,
    int64,
    isfinite,
    nan,
    ndarray,
    ndim,
    take_along_axis,
    where,
    zeros,
)

from edge_fs._errors import MatchConfigError
from edge_fs.block_matcher._config import MatchConfig
from edge_fs.edge_distribution import EdgeDistribution


@dataclass(frozen=True, eq=False)
class MatchProfile:
    """
    Per-column result of `match_profiles`, indexed by reference columns.

    Attributes:
        displacement_px: Sub-pixel displacement (`NaN` where not valid).
        integer_px: Integer displacement `k* + shift` (0 where not valid).
        valid: Column lies outside the excluded border and had at least one admissible candidate.
        cost: Best SAD cost (`NaN` where not valid).
        low_confidence: Cost surface too flat to trust the minimum.
        degenerate_subpixel: Sub-pixel parabola was flat; offset set to 0.
        ambiguous: A distant offset nearly ties the best, or another reference column claims the same
            target column more cheaply.
    """

    displacement_px: ndarray
    integer_px: ndarray
    valid: ndarray
    cost: ndarray
    low_confidence: ndarray
    degenerate_subpixel: ndarray
    ambiguous: ndarray

    @property
    def confident(self) -> ndarray:
        """Valid columns whose minimum is neither flat nor ambiguous."""
        return self.valid & ~self.low_confidence & ~self.ambiguous

    def __len__(self) -> int:
        return self.valid.shape[0]


def subpixel_refine(
    cost_minus: Union[float, ndarray], cost_zero: Union[float, ndarray], cost_plus: Union[float, ndarray]
) -> Tuple[Union[float, ndarray], Union[bool, ndarray]]:
    """
    Offset of the vertex of the parabola through three costs at k*-1, k*, k*+1.

    Works on scalars or arrays of equal shape.

    Returns:
        tuple: (offset, degenerate). Offset is `0.5 * (c- - c+) / (c- - 2 c0 + c+)` clamped to [-0.5, 0.5];
            a non-positive denominator gives offset 0 with `degenerate` set.
    """
    c_m = asarray(cost_minus, dtype=float64)
    c_0 = asarray(cost_zero, dtype=float64)
    c_p = asarray(cost_plus, dtype=float64)
    denom = c_m - 2.0 * c_0 + c_p
    degenerate = ~(denom > 0)
    safe = where(degenerate, 1.0, denom)
    offset = where(degenerate, 0.0, clip(0.5 * (c_m - c_p) / safe, -0.5, 0.5))
    if ndim(offset) == 0:
        return float(offset), bool(degenerate)
    return offset, degenerate


def _column_shift(shift_px: Optional[Union[int, ndarray]], n: int) -> ndarray:
    if shift_px is None:
        return zeros(n, dtype=int64)
    shift = asarray(shift_px)
    if shift.ndim == 0:
        return full(n, int(shift), dtype=int64)
    if shift.shape != (n,):
        raise MatchConfigError(f"Per-column shift has shape {shift.shape}, expected ({n},).")
    if (shift != shift.astype(int64)).any():
        raise MatchConfigError("Per-column shift must hold integers.")
    return shift.astype(int64)


def _cheaper_claim(
    costs: ndarray,
    cols: ndarray,
    col_shift: ndarray,
    search_min_px: int,
    best: ndarray,
    best_disp: ndarray,
    tolerance_px: int,
) -> ndarray:
    """True where a reference column more than `tolerance_px` away pairs with the same target column for less."""
    n_off = costs.shape[1]
    target = cols + best_disp
    pos = target[:, None] - cols[None, :] - col_shift[None, :] - search_min_px  # (C, C)
    rivals = (pos >= 0) & (pos < n_off) & (np_abs(cols[None, :] - cols[:, None]) > tolerance_px)
    rival_cost = costs[arange(cols.shape[0])[None, :], clip(pos, 0, n_off - 1)]
    return where(rivals, rival_cost, inf).min(axis=1) < best


def match_profiles(
    ref: EdgeDistribution,
    target: EdgeDistribution,
    cfg: MatchConfig = MatchConfig(),
    shift_px: Optional[Union[int, ndarray]] = None,
) -> MatchProfile:
    """
    Matches every column of `ref` against `target` by minimum SAD over a window.

    For a column `i` outside the excluded border, offsets `k` in `[search_min_px, search_max_px]` are
    scored as `sum_j |ref[i + j] - target[i + j + k + shift[i]]|` over the window. A candidate whose window
    leaves the target is not admissible. Equal costs resolve to the smallest |k + shift|, then the
    lower value.

    A minimum is ambiguous when an offset more than a pixel away nearly ties it (`uniqueness_ratio`) or
    when a reference column outside `consistency_px` reaches the same target column more cheaply.

    Args:
        ref (EdgeDistribution): Reference distribution.
        target (EdgeDistribution): Distribution searched; same length as `ref`.
        cfg (MatchConfig): Window and search bounds.
        shift_px (int or ndarray): Integer pre-shift of the search start, scalar or one per column.

    Returns:
        MatchProfile: Per-column displacement, cost and validity.
    """
    n = len(ref)
    if len(target) != n:
        raise MatchConfigError(f"Distributions differ in length: {n} vs {len(target)}.")
    if 2 * cfg.border_px >= n:
        raise MatchConfigError(
            f"Window {cfg.window_px} and search range {cfg.search_range_px} leave no columns to match "
            f"in a width of {n}."
        )
    shift = _column_shift(shift_px, n)
    ref_v = ref.values.astype(float64)
    tgt_v = target.values.astype(float64)

    cols = arange(cfg.border_px, n - cfg.border_px)
    offsets = arange(cfg.search_min_px, cfg.search_max_px + 1)
    win = arange(-cfg.half_window_px, cfg.half_window_px + 1)

    ref_win = ref_v[cols[:, None] + win[None, :]]  # (C, W)
    disp = offsets[None, :] + shift[cols][:, None]  # (C, K)
    tgt_idx = cols[:, None, None] + disp[:, :, None] + win[None, None, :]  # (C, K, W)
    admissible = ((tgt_idx >= 0) & (tgt_idx < n)).all(axis=2)
    tgt_win = tgt_v[clip(tgt_idx, 0, n - 1)]
    costs = np_abs(ref_win[:, None, :] - tgt_win).sum(axis=2)
    costs = where(admissible, costs, inf)

    best = costs.min(axis=1)
    has_candidate = isfinite(best)
    # tie-break rank: 0, -1, +1, -2, +2, ...
    rank = 2 * np_abs(disp) + (disp > 0)
    rank = where(costs == best[:, None], rank, rank.max() + 1)
    k_idx = argmin(rank, axis=1)[:, None]
    best_disp = take_along_axis(disp, k_idx, axis=1)[:, 0]

    worst = where(admissible, costs, -inf).max(axis=1)
    spread = where(has_candidate, worst - where(has_candidate, best, 0.0), 0.0)
    flat_threshold = cfg.flat_fraction * cfg.window_px * 0.5 * (ref_v.mean() + tgt_v.mean())
    flat = spread <= flat_threshold

    n_off = offsets.shape[0]
    interior = (k_idx[:, 0] > 0) & (k_idx[:, 0] < n_off - 1)
    offset = zeros(cols.shape[0])
    degenerate = zeros(cols.shape[0], dtype=bool)
    if cfg.subpixel and n_off >= 3:
        km = clip(k_idx - 1, 0, n_off - 1)
        kp = clip(k_idx + 1, 0, n_off - 1)
        c_m = take_along_axis(costs, km, axis=1)[:, 0]
        c_p = take_along_axis(costs, kp, axis=1)[:, 0]
        use = interior & isfinite(c_m) & isfinite(c_p)
        sub, degen = subpixel_refine(where(use, c_m, 0.0), where(use, best, 0.0), where(use, c_p, 0.0))
        offset = where(use, sub, 0.0)
        degenerate = use & degen

    ambiguous_cols = zeros(cols.shape[0], dtype=bool)
    if cfg.uniqueness_ratio is not None:
        distant = np_abs(arange(n_off)[None, :] - k_idx) > 1
        second = where(distant, costs, inf).min(axis=1)
        ambiguous_cols |= second * (1.0 - cfg.uniqueness_ratio) <= best
    if cfg.consistency_px is not None:
        ambiguous_cols |= _cheaper_claim(
            costs, cols, shift[cols], cfg.search_min_px, best, best_disp, cfg.consistency_px
        )

    displacement_px = full(n, nan)
    integer_px = zeros(n, dtype=int64)
    valid = zeros(n, dtype=bool)
    cost = full(n, nan)
    low_confidence = zeros(n, dtype=bool)
    degenerate_subpixel = zeros(n, dtype=bool)
    ambiguous = zeros(n, dtype=bool)

    valid[cols] = has_candidate
    integer_px[cols] = where(has_candidate, best_disp, 0)
    displacement_px[cols] = where(has_candidate, best_disp + offset, nan)
    cost[cols] = where(has_candidate, best, nan)
    low_confidence[cols] = has_candidate & flat
    degenerate_subpixel[cols] = has_candidate & degenerate
    ambiguous[cols] = has_candidate & ambiguous_cols

    for arr in (displacement_px, integer_px, valid, cost, low_confidence, degenerate_subpixel, ambiguous):
        arr.flags.writeable = False
    return MatchProfile(
        displacement_px=displacement_px,
        integer_px=integer_px,
        valid=valid,
        cost=cost,
        low_confidence=low_confidence,
        degenerate_subpixel=degenerate_subpixel,
        ambiguous=ambiguous,
    )
