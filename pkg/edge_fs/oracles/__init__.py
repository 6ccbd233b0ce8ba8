"""Reference implementations used to check and benchmark the Edge-FS pipeline."""
from ._analytic import analytic_flow
from ._dense import DenseFlowField, dense_block_flow
from ._exhaustive import exhaustive_match_1d

__all__ = [
    "DenseFlowField",
    "analytic_flow",
    "dense_block_flow",
    "exhaustive_match_1d",
]
