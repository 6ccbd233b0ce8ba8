"""1-D SAD block matching with sub-pixel refinement, shared by flow and stereo."""
from ._config import MatchConfig
from ._match import MatchProfile, match_profiles, subpixel_refine

__all__ = [
    "MatchConfig",
    "MatchProfile",
    "match_profiles",
    "subpixel_refine",
]
