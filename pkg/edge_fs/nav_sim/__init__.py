"""Closed-loop obstacle avoidance flown on Edge-FS outputs inside a synthetic world."""
from ._config import TURN_DIRECTIONS, NavConfig
from ._dynamics import step_dynamics
from ._episode import EpisodeLog, random_start, run_episode, run_episodes
from ._fsm import FsmOutput, NavMode, NavState, force_field, step_fsm
from ._model import is_deadlock_free, reachable_modes, transition_table

__all__ = [
    # Configuration
    "NavConfig",
    "TURN_DIRECTIONS",
    # State machine
    "FsmOutput",
    "NavMode",
    "NavState",
    "force_field",
    "step_fsm",
    # Dynamics and episodes
    "EpisodeLog",
    "random_start",
    "run_episode",
    "run_episodes",
    "step_dynamics",
    # Model check
    "is_deadlock_free",
    "reachable_modes",
    "transition_table",
]
