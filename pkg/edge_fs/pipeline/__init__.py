"""Per-frame Edge-FS pipeline, sequence runner and latency benchmark."""
from ._bench import benchmark
from ._pipeline import EdgeFSPipeline, FrameResult
from ._sequence import run_sequence

__all__ = [
    "EdgeFSPipeline",
    "FrameResult",
    "benchmark",
    "run_sequence",
]
