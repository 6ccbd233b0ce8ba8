from dataclasses import dataclass, field
from math import pi, radians

from edge_fs._errors import DataError

TURN_DIRECTIONS = ("positive", "random")


@dataclass(frozen=True)
class NavConfig:
    """
    Parameters of the obstacle-avoidance flight.

    Args:
        obstacle_threshold_m (float): Obstacles closer than this stop forward flight.
        cruise_speed_m_s (float): Forward speed in Forward mode (0 holds position).
        hover_duration_s (float): Time spent hovering before a turn.
        turn_angle_rad (float): Heading change of one turn, in (0, pi).
        turn_rate_rad_s (float): Yaw rate while turning.
        ff_distance_m (float): Distance at which the force field engages.
        ff_gain (float): Backward speed per meter of penetration into the force field, (m/s)/m.
        tracking_tau_s (float): Time constant of the first-order velocity tracking.
        collision_radius_m (float): Distance to a wall that counts as a collision.
        control_rate_hz (float): Perception and control rate.
        turn_direction (str): "positive" (counter-clockwise) or "random" (drawn per turn from the episode seed).
        turn_until_clear (bool): Keep turning in `turn_angle_rad` steps until the way is clear instead of
            returning to Check after one step.
        guidance_gain (float): Proportional correction on the difference between the velocity reference and
            the filtered estimate.
        guidance_limit_m_s (float): Largest correction per axis.
    """

    obstacle_threshold_m: float = field(default=1.0)
    cruise_speed_m_s: float = field(default=0.3)
    hover_duration_s: float = field(default=1.0)
    turn_angle_rad: float = field(default=radians(60))
    turn_rate_rad_s: float = field(default=1.0)
    ff_distance_m: float = field(default=0.8)
    ff_gain: float = field(default=0.5)
    tracking_tau_s: float = field(default=0.3)
    collision_radius_m: float = field(default=0.05)
    control_rate_hz: float = field(default=30.0)
    turn_direction: str = field(default="positive")
    turn_until_clear: bool = field(default=False)
    guidance_gain: float = field(default=0.5)
    guidance_limit_m_s: float = field(default=0.1)

    def __post_init__(self):
        for name in (
            "obstacle_threshold_m",
            "hover_duration_s",
            "turn_rate_rad_s",
            "ff_distance_m",
            "tracking_tau_s",
            "collision_radius_m",
            "control_rate_hz",
        ):
            if not getattr(self, name) > 0:
                raise DataError(f"{name} must be positive, got {getattr(self, name)}.")
        for name in ("cruise_speed_m_s", "ff_gain", "guidance_gain", "guidance_limit_m_s"):
            if getattr(self, name) < 0:
                raise DataError(f"{name} must not be negative, got {getattr(self, name)}.")
        if not 0 < self.turn_angle_rad < pi:
            raise DataError(f"turn_angle_rad must lie in (0, pi), got {self.turn_angle_rad}.")
        if self.turn_direction not in TURN_DIRECTIONS:
            raise DataError(
                f'turn_direction must be one of {TURN_DIRECTIONS}, got "{self.turn_direction}".'
            )

    @property
    def dt_s(self) -> float:
        return 1.0 / self.control_rate_hz
