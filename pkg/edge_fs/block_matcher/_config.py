from dataclasses import dataclass, field, replace
from typing import Optional

from edge_fs._errors import MatchConfigError


@dataclass(frozen=True)
class MatchConfig:
    """
    Parameters of 1-D SAD block matching.

    Offsets searched are `search_min_px..search_max_px`; both default to the symmetric `search_range_px`.

    Args:
        window_px (int): Odd SAD block size, at least 3.
        search_range_px (int): Largest absolute offset searched; also sets the excluded border.
        search_min_px (int): Smallest offset searched (defaults to `-search_range_px`).
        search_max_px (int): Largest offset searched (defaults to `search_range_px`).
        subpixel (bool): Refine interior minima with a parabola through the neighbouring costs.
        flat_fraction (float): A column is low-confidence when its cost spread is at most
            `flat_fraction * window_px * mean distribution value`.
        uniqueness_ratio (float): A column is ambiguous when an offset more than one pixel from the best
            costs at most `best / (1 - uniqueness_ratio)`. None disables the check.
        consistency_px (int): A column is ambiguous when a reference column more than `consistency_px`
            away pairs with the same target column at a strictly lower cost. None disables the check.
    """

    window_px: int = field(default=11)
    search_range_px: int = field(default=15)
    search_min_px: Optional[int] = field(default=None)
    search_max_px: Optional[int] = field(default=None)
    subpixel: bool = field(default=True)
    flat_fraction: float = field(default=0.01)
    uniqueness_ratio: Optional[float] = field(default=0.15)
    consistency_px: Optional[int] = field(default=1)

    def __post_init__(self):
        if self.search_min_px is None:
            object.__setattr__(self, "search_min_px", -self.search_range_px)
        if self.search_max_px is None:
            object.__setattr__(self, "search_max_px", self.search_range_px)

        if self.window_px < 3 or self.window_px % 2 == 0:
            raise MatchConfigError(f"window_px must be odd and >= 3, got {self.window_px}.")
        if self.search_range_px < 0:
            raise MatchConfigError(f"search_range_px must be >= 0, got {self.search_range_px}.")
        if self.search_min_px > self.search_max_px:
            raise MatchConfigError(
                f"search_min_px ({self.search_min_px}) exceeds search_max_px ({self.search_max_px})."
            )
        if max(abs(self.search_min_px), abs(self.search_max_px)) > self.search_range_px:
            raise MatchConfigError(
                f"Search bounds [{self.search_min_px}, {self.search_max_px}] exceed "
                f"search_range_px {self.search_range_px}."
            )
        if self.flat_fraction < 0:
            raise MatchConfigError(f"flat_fraction must be >= 0, got {self.flat_fraction}.")
        if self.uniqueness_ratio is not None and not 0 <= self.uniqueness_ratio < 1:
            raise MatchConfigError(f"uniqueness_ratio must be in [0, 1), got {self.uniqueness_ratio}.")
        if self.consistency_px is not None and self.consistency_px < 0:
            raise MatchConfigError(f"consistency_px must be >= 0, got {self.consistency_px}.")

    @property
    def half_window_px(self) -> int:
        return (self.window_px - 1) // 2

    @property
    def border_px(self) -> int:
        """Columns excluded on each side: the search range plus half the SAD block."""
        return self.search_range_px + self.half_window_px

    def with_bounds(self, search_min_px: int, search_max_px: int) -> "MatchConfig":
        return replace(self, search_min_px=search_min_px, search_max_px=search_max_px)
