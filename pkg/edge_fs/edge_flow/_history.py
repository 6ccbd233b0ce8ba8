from collections import deque
from typing import Iterator, Optional

from edge_fs._errors import DataError, NonMonotonicTimestampError
from edge_fs.edge_distribution import EdgeDistribution

DEFAULT_HISTORY_SIZE = 10


class DistributionHistory:
    """
    Ring buffer of the most recent edge distributions of one camera.

    Timestamps must strictly increase. The buffer also keeps the per-frame displacement measured on the
    previous flow computation, which drives the choice of time horizon.
    """

    def __init__(self, capacity: int = DEFAULT_HISTORY_SIZE):
        if capacity < 2:
            raise DataError(f"History capacity must be at least 2, got {capacity}.")
        self.capacity = capacity
        self._entries = deque(maxlen=capacity)
        self.prev_flow_px_per_frame: Optional[float] = None

    def push(self, dist: EdgeDistribution) -> None:
        if self._entries:
            latest = self._entries[-1]
            if not dist.source_timestamp_s > latest.source_timestamp_s:
                raise NonMonotonicTimestampError(
                    f"Distribution at t={dist.source_timestamp_s} does not follow t={latest.source_timestamp_s}."
                )
            if len(dist) != len(latest):
                raise DataError(f"Distribution length {len(dist)} differs from history length {len(latest)}.")
        self._entries.append(dist)

    @property
    def latest(self) -> EdgeDistribution:
        return self.back(0)

    def back(self, n: int) -> EdgeDistribution:
        """Distribution stored `n` frames before the most recent one."""
        if not 0 <= n < len(self._entries):
            raise IndexError(f"History holds {len(self._entries)} entries, cannot look back {n}.")
        return self._entries[-1 - n]

    def clear(self) -> None:
        self._entries.clear()
        self.prev_flow_px_per_frame = None

    def __len__(self) -> int:
        return len(self._entries)

    def __iter__(self) -> Iterator[EdgeDistribution]:
        return iter(self._entries)
