from dataclasses import dataclass, field, replace
from enum import Enum
from typing import NamedTuple, Optional, Tuple

from edge_fs.nav_sim._config import NavConfig
from edge_fs.scene_sim import CameraPose

TURN_TOLERANCE_RAD = 1e-9


class NavMode(Enum):
    CHECK = "check"
    FORWARD = "forward"
    HOVER = "hover"
    TURN = "turn"


@dataclass(frozen=True)
class NavState:
    """
    Simulated vehicle: pose and body velocity, avoidance mode and the bookkeeping of timed modes.

    `turn_progress_rad` is the heading change accumulated in the current turn step; `turn_sign` its direction.
    """

    pose: CameraPose
    mode: NavMode = field(default=NavMode.CHECK)
    mode_entry_time_s: float = field(default=0.0)
    commanded_vel: Tuple[float, float] = field(default=(0.0, 0.0))
    sim_time_s: float = field(default=0.0)
    turn_progress_rad: float = field(default=0.0)
    turn_sign: float = field(default=1.0)
    collided: bool = field(default=False)


class FsmOutput(NamedTuple):
    state: NavState
    vel_ref: Tuple[float, float]
    yaw_rate_ref: float


def _is_clear(nearest: Optional[float], cfg: NavConfig) -> bool:
    return nearest is None or nearest > cfg.obstacle_threshold_m


def step_fsm(
    state: NavState,
    nearest: Optional[float],
    cfg: NavConfig,
    turn_sign: float = 1.0,
) -> FsmOutput:
    """
    One control tick of the Check / Forward / Hover / Turn machine.

    Transitions are evaluated first, then the new mode sets the references:
        - Check goes to Forward if the way is clear (no obstacle, or farther than the threshold), else Hover.
        - Forward goes to Hover when an obstacle is closer than the threshold.
        - Hover goes to Turn once it has lasted `hover_duration_s`.
        - Turn goes to Check once `turn_angle_rad` is accumulated (or turns another step while blocked
          with `turn_until_clear`).

    Forward commands `(cruise_speed, 0)`; every other mode commands zero translation. Turn yaws at
    `turn_rate_rad_s`, slowing on its last tick so the step ends exactly at `turn_angle_rad`.

    Args:
        state (NavState): State at the start of the tick; `sim_time_s` is the tick time.
        nearest (float): Distance of the nearest obstacle, or None.
        cfg (NavConfig): Avoidance parameters.
        turn_sign (float): Direction (+1 or -1) used if a turn starts on this tick.

    Returns:
        FsmOutput: The state with updated mode bookkeeping, velocity reference and yaw-rate reference.
    """
    dt = cfg.dt_s
    clear = _is_clear(nearest, cfg)
    mode, progress, sign = state.mode, state.turn_progress_rad, state.turn_sign

    if mode is NavMode.CHECK:
        mode = NavMode.FORWARD if clear else NavMode.HOVER
    elif mode is NavMode.FORWARD:
        if nearest is not None and nearest < cfg.obstacle_threshold_m:
            mode = NavMode.HOVER
    elif mode is NavMode.HOVER:
        elapsed = state.sim_time_s - state.mode_entry_time_s
        if elapsed > cfg.hover_duration_s - 0.5 * dt:
            mode, progress, sign = NavMode.TURN, 0.0, turn_sign
    elif mode is NavMode.TURN:
        if progress >= cfg.turn_angle_rad - TURN_TOLERANCE_RAD:
            if cfg.turn_until_clear and not clear:
                progress = 0.0
            else:
                mode = NavMode.CHECK

    entry = state.mode_entry_time_s if mode is state.mode else state.sim_time_s
    vel_ref, yaw_rate = (0.0, 0.0), 0.0
    if mode is NavMode.FORWARD:
        vel_ref = (cfg.cruise_speed_m_s, 0.0)
    elif mode is NavMode.TURN:
        rate = min(cfg.turn_rate_rad_s, (cfg.turn_angle_rad - progress) / dt)
        yaw_rate = sign * rate
        progress += rate * dt

    next_state = replace(
        state,
        mode=mode,
        mode_entry_time_s=entry,
        turn_progress_rad=progress,
        turn_sign=sign,
    )
    return FsmOutput(state=next_state, vel_ref=vel_ref, yaw_rate_ref=yaw_rate)


def force_field(nearest: Optional[float], cfg: NavConfig) -> float:
    """Backward forward-axis velocity reference: `-ff_gain * (ff_distance - nearest)` inside the field."""
    if nearest is None or nearest >= cfg.ff_distance_m:
        return 0.0
    return -cfg.ff_gain * (cfg.ff_distance_m - nearest)
