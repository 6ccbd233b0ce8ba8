from dataclasses import dataclass, field
from math import cos, pi, sin
from typing import List, Tuple

from edge_fs._errors import DataError
from edge_fs.scene_sim._world import CameraPose

FRAME_RATE_HZ = 30.0
SWAY_PERIOD_S = 6.0
MOTION_KINDS = ("static", "lateral", "approach", "yaw", "sway")


@dataclass(frozen=True)
class Motion:
    """
    Scripted motion with constant heading (or constant yaw rate).

    Kinds: "static"; "lateral" (sideways at `value` m/s, positive right); "approach" (forward at `value`
    m/s); "yaw" (turn in place at `value` rad/s); "sway" (sideways velocity `value * sin(2 pi t / 6 s)`).
    """

    kind: str
    value: float = field(default=0.0)

    def __post_init__(self):
        if self.kind not in MOTION_KINDS:
            raise DataError(f'Unknown motion "{self.kind}"; choose one of {MOTION_KINDS}.')

    @classmethod
    def parse(cls, text: str) -> "Motion":
        """Parses "kind" or "kind:value", e.g. "lateral:0.3"."""
        kind, _, value = text.partition(":")
        try:
            return cls(kind=kind.strip(), value=float(value) if value else 0.0)
        except ValueError as err:
            raise DataError(f'Cannot parse motion "{text}": {err}') from err

    def body_state(self, t: float) -> Tuple[float, float, float]:
        """(vx, vy, yaw_rate) at time `t`."""
        if self.kind == "lateral":
            return 0.0, self.value, 0.0
        if self.kind == "approach":
            return self.value, 0.0, 0.0
        if self.kind == "yaw":
            return 0.0, 0.0, self.value
        if self.kind == "sway":
            return 0.0, self.value * sin(2 * pi * t / SWAY_PERIOD_S), 0.0
        return 0.0, 0.0, 0.0

    def body_displacement(self, t: float) -> Tuple[float, float]:
        """Forward and rightward distance travelled since t=0."""
        if self.kind == "lateral":
            return 0.0, self.value * t
        if self.kind == "approach":
            return self.value * t, 0.0
        if self.kind == "sway":
            w = 2 * pi / SWAY_PERIOD_S
            return 0.0, self.value / w * (1.0 - cos(w * t))
        return 0.0, 0.0


def scripted_trajectory(
    motion: Motion,
    start: CameraPose,
    seconds: float,
    rate_hz: float = FRAME_RATE_HZ,
) -> List[CameraPose]:
    """
    Poses at `rate_hz` for `seconds`, `round(seconds * rate_hz)` of them, the first at the start pose.

    Velocities and yaw rates are the exact derivatives of the positions and heading.
    """
    if seconds <= 0 or rate_hz <= 0:
        raise DataError(f"Duration and rate must be positive, got {seconds} s at {rate_hz} Hz.")
    poses = []
    fx, fy = cos(start.yaw_rad), sin(start.yaw_rad)
    rx, ry = sin(start.yaw_rad), -cos(start.yaw_rad)
    for i in range(int(round(seconds * rate_hz))):
        t = i / rate_hz
        vx, vy, yaw_rate = motion.body_state(t)
        fwd, right = motion.body_displacement(t)
        poses.append(
            CameraPose(
                pos_x_m=start.pos_x_m + fwd * fx + right * rx,
                pos_y_m=start.pos_y_m + fwd * fy + right * ry,
                yaw_rad=start.yaw_rad + yaw_rate * t,
                vx_m_s=vx,
                vy_m_s=vy,
                yaw_rate_rad_s=yaw_rate,
            )
        )
    return poses
