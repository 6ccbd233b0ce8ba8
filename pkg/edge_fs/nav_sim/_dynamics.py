from dataclasses import replace
from math import cos, sin
from typing import Tuple

from edge_fs._errors import DataError
from edge_fs.nav_sim._config import NavConfig
from edge_fs.nav_sim._fsm import NavState
from edge_fs.scene_sim import CameraPose, World2D


def step_dynamics(
    state: NavState,
    vel_ref: Tuple[float, float],
    yaw_rate_ref: float,
    dt: float,
    cfg: NavConfig,
    world: World2D,
) -> NavState:
    """
    Advances the vehicle by `dt`.

    Body velocity follows the reference to first order, `v <- v + (dt / tau) * (v_ref - v)`; the yaw rate is
    applied directly. Position is integrated in the world frame with the heading at the start of the step.
    The state is flagged as collided when the new position lies within `collision_radius_m` of a wall or of
    the edge of the world bounds.
    """
    if not dt > 0:
        raise DataError(f"Time step must be positive, got {dt}.")
    pose = state.pose
    alpha = min(dt / cfg.tracking_tau_s, 1.0)
    vx = pose.vx_m_s + alpha * (vel_ref[0] - pose.vx_m_s)
    vy = pose.vy_m_s + alpha * (vel_ref[1] - pose.vy_m_s)

    psi = pose.yaw_rad
    x = pose.pos_x_m + (vx * cos(psi) + vy * sin(psi)) * dt
    y = pose.pos_y_m + (vx * sin(psi) - vy * cos(psi)) * dt
    new_pose = CameraPose(
        pos_x_m=x,
        pos_y_m=y,
        yaw_rad=psi + yaw_rate_ref * dt,
        vx_m_s=vx,
        vy_m_s=vy,
        yaw_rate_rad_s=yaw_rate_ref,
    )
    return replace(
        state,
        pose=new_pose,
        commanded_vel=(vel_ref[0], vel_ref[1]),
        sim_time_s=state.sim_time_s + dt,
        collided=state.collided
        or world.distance_to_nearest(x, y) < cfg.collision_radius_m
        or not world.contains(x, y, margin_m=cfg.collision_radius_m),
    )
