"""
Full-search 1-D matcher used as the reference for `edge_fs.block_matcher`.

Written without any of the block matcher's routines: offsets are visited one at a time in order of
increasing |displacement| and a candidate replaces the best one only when strictly cheaper.
"""
from typing import Optional, Union

from numpy import abs as np_abs
from numpy import (
    arange,
    array,
    asarray,
    concatenate,
    convolve,
    float64,
    full,
    inf,
    int64,
    isnan,
    nan,
    ndarray,
    ones,
    unique,
    zeros,
)

from edge_fs._errors import MatchConfigError
from edge_fs.block_matcher import MatchConfig, MatchProfile
from edge_fs.edge_distribution import EdgeDistribution


def _offset_costs(ref_v: ndarray, tgt_v: ndarray, offset: int, window: int) -> ndarray:
    """SAD of the window centered on every column against the target moved by `offset`; inf if it leaves."""
    n = ref_v.shape[0]
    moved = full(n, nan)
    if abs(offset) >= n:
        return full(n, inf)
    if offset >= 0:
        moved[: n - offset] = tgt_v[offset:]
    else:
        moved[-offset:] = tgt_v[: n + offset]
    sums = convolve(np_abs(ref_v - moved), ones(window), mode="valid")
    half = window // 2
    costs = full(n, inf)
    costs[half : n - half] = sums
    costs[isnan(costs)] = inf
    return costs


def exhaustive_match_1d(
    ref: EdgeDistribution,
    target: EdgeDistribution,
    cfg: MatchConfig = MatchConfig(),
    shift_px: Optional[Union[int, ndarray]] = None,
) -> MatchProfile:
    """Same contract as `match_profiles()`, computed by plain full search."""
    n = len(ref)
    if len(target) != n:
        raise MatchConfigError(f"Distributions differ in length: {n} vs {len(target)}.")
    half = (cfg.window_px - 1) // 2
    border = cfg.search_range_px + half
    if 2 * border >= n:
        raise MatchConfigError(f"No columns left to match in a width of {n}.")
    shift = zeros(n, dtype=int64) if shift_px is None else asarray(shift_px, dtype=int64)
    if shift.ndim == 0:
        shift = full(n, int(shift), dtype=int64)

    ref_v = ref.values.astype(float64)
    tgt_v = target.values.astype(float64)
    ks = list(range(cfg.search_min_px, cfg.search_max_px + 1))
    inner = list(range(border, n - border))

    best_cost = full(n, inf)
    best_disp = zeros(n, dtype=int64)
    best_pos = zeros(n, dtype=int64)
    all_costs = full((n, len(ks)), inf)
    for s in unique(shift[inner]):
        cols = array([i for i in inner if shift[i] == s], dtype=int64)
        order = sorted(range(len(ks)), key=lambda p: (abs(ks[p] + s), ks[p] + s))
        for pos in order:
            k = ks[pos]
            costs = _offset_costs(ref_v, tgt_v, int(k + s), cfg.window_px)
            all_costs[cols, pos] = costs[cols]
            better = cols[costs[cols] < best_cost[cols]]
            best_cost[better] = costs[better]
            best_disp[better] = k + s
            best_pos[better] = pos

    level = cfg.flat_fraction * cfg.window_px * concatenate([ref_v, tgt_v]).mean()
    displacement = full(n, nan)
    integer_px = zeros(n, dtype=int64)
    valid = zeros(n, dtype=bool)
    cost = full(n, nan)
    low_confidence = zeros(n, dtype=bool)
    degenerate = zeros(n, dtype=bool)
    ambiguous = zeros(n, dtype=bool)
    inner_arr = array(inner, dtype=int64)
    for i in inner:
        if best_cost[i] == inf:
            continue
        valid[i] = True
        integer_px[i] = best_disp[i]
        cost[i] = best_cost[i]
        row = all_costs[i][all_costs[i] < inf]
        low_confidence[i] = row.max() - row.min() <= level

        p = best_pos[i]
        if cfg.uniqueness_ratio is not None:
            distant = all_costs[i][np_abs(arange(len(ks)) - p) > 1]
            if distant.size and distant.min() * (1.0 - cfg.uniqueness_ratio) <= best_cost[i]:
                ambiguous[i] = True
        if cfg.consistency_px is not None:
            others = inner_arr[np_abs(inner_arr - i) > cfg.consistency_px]
            q = i + best_disp[i] - others - shift[others] - cfg.search_min_px
            inside = (q >= 0) & (q < len(ks))
            if (all_costs[others[inside], q[inside]] < best_cost[i]).any():
                ambiguous[i] = True

        frac = 0.0
        if cfg.subpixel and 0 < p < len(ks) - 1:
            left, mid, right = all_costs[i, p - 1], all_costs[i, p], all_costs[i, p + 1]
            if left < inf and right < inf:
                curvature = left + right - 2 * mid
                if curvature > 0:
                    frac = min(0.5, max(-0.5, (left - right) / (2 * curvature)))
                else:
                    degenerate[i] = True
        displacement[i] = best_disp[i] + frac

    return MatchProfile(
        displacement_px=displacement,
        integer_px=integer_px,
        valid=valid,
        cost=cost,
        low_confidence=low_confidence,
        degenerate_subpixel=degenerate,
        ambiguous=ambiguous,
    )
