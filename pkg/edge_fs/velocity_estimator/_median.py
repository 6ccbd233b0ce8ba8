from collections import deque
from typing import Sequence

from numpy import median

from edge_fs._errors import EmptyWindowError
from edge_fs.velocity_estimator._fit import VelocityEstimate

DEFAULT_MEDIAN_WINDOW = 5


def median_filter_velocity(window: Sequence[VelocityEstimate]) -> VelocityEstimate:
    """
    Componentwise median of the valid estimates in `window`.

    An even number of valid estimates takes the mean of the two middle values. The result carries the
    newest timestamp of the window and the point count and residual of the newest valid estimate.
    """
    valid = [est for est in window if est.valid]
    if not valid:
        raise EmptyWindowError(
            f"Median window of {len(window)} estimate(s) holds no valid estimate."
        )
    newest = valid[-1]
    return VelocityEstimate(
        vx_m_s=float(median([est.vx_m_s for est in valid])),
        vy_m_s=float(median([est.vy_m_s for est in valid])),
        n_points=newest.n_points,
        residual_rms=newest.residual_rms,
        timestamp_s=max(est.timestamp_s for est in window),
    )


class VelocityMedianFilter:
    """Keeps the last `size` estimates and returns their median on every update."""

    def __init__(self, size: int = DEFAULT_MEDIAN_WINDOW):
        self.window = deque(maxlen=size)

    def update(self, estimate: VelocityEstimate) -> VelocityEstimate:
        """Adds `estimate`; returns an invalid estimate while the window has no valid one."""
        self.window.append(estimate)
        try:
            return median_filter_velocity(self.window)
        except EmptyWindowError:
            return VelocityEstimate.invalid(
                n_points=estimate.n_points, timestamp_s=estimate.timestamp_s
            )

    def clear(self) -> None:
        self.window.clear()
