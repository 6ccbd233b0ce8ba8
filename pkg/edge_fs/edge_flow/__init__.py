"""EdgeFlow: temporal matching of edge distributions with adaptive horizon and yaw derotation."""
from ._flow import FlowProfile, compute_flow, derotation_flow, select_horizon
from ._history import DEFAULT_HISTORY_SIZE, DistributionHistory

__all__ = [
    "DEFAULT_HISTORY_SIZE",
    "DistributionHistory",
    "FlowProfile",
    "compute_flow",
    "derotation_flow",
    "select_horizon",
]
