import json
import logging
from dataclasses import dataclass, field, replace
from math import pi
from pathlib import Path
from typing import Optional, Union

from numpy import clip, nan
from numpy.random import default_rng
from pandas import DataFrame
from tqdm import tqdm

from edge_fs._errors import FrameIOError
from edge_fs.frame_io import CameraIntrinsics, get_intrinsics_preset
from edge_fs.nav_sim._config import NavConfig
from edge_fs.nav_sim._dynamics import step_dynamics
from edge_fs.nav_sim._fsm import NavMode, NavState, force_field, step_fsm
from edge_fs.pipeline import EdgeFSPipeline
from edge_fs.scene_sim import CameraPose, World2D, build_world, render_stereo

START_JITTER_M = 0.5


@dataclass(frozen=True, eq=False)
class EpisodeLog:
    """
    Record of one closed-loop flight.

    `ticks` has one row per control tick: t, x, y, yaw, vx, vy, yaw_rate (true state before the tick), mode,
    nearest_m, vx_est, vy_est, est_valid, vx_cmd, vy_cmd, yaw_rate_cmd.
    """

    ticks: DataFrame
    collision: bool
    duration_s: float
    seed: int
    world: str = field(default="custom")

    def mode_histogram(self) -> dict:
        """Seconds spent in each mode."""
        dt = self.ticks["t"].diff().median() if len(self.ticks) > 1 else 0.0
        counts = self.ticks["mode"].value_counts()
        return {mode.value: float(counts.get(mode.value, 0) * dt) for mode in NavMode}

    def summary(self) -> dict:
        return {
            "seed": self.seed,
            "world": self.world,
            "duration_s": self.duration_s,
            "collision": self.collision,
            "modes_s": self.mode_histogram(),
        }

    def save(self, out_dir: Union[str, Path], stem: str) -> None:
        """Writes `<stem>.csv` (ticks) and `<stem>.json` (summary) into `out_dir`."""
        out_dir = Path(out_dir)
        try:
            out_dir.mkdir(parents=True, exist_ok=True)
            self.ticks.to_csv(out_dir / f"{stem}.csv", index=False)
            (out_dir / f"{stem}.json").write_text(json.dumps(self.summary(), indent=2))
        except OSError as err:
            raise FrameIOError(f'Could not write episode log to "{out_dir}": {err}') from err


def random_start(world: World2D, seed: int) -> CameraPose:
    """Pose near the center of the world bounds with a random heading, drawn from `seed`."""
    rng = default_rng(seed)
    x_min, y_min, x_max, y_max = world.bounds
    jitter = rng.uniform(-START_JITTER_M, START_JITTER_M, size=2)
    return CameraPose(
        pos_x_m=(x_min + x_max) / 2 + float(jitter[0]),
        pos_y_m=(y_min + y_max) / 2 + float(jitter[1]),
        yaw_rad=float(rng.uniform(-pi, pi)),
    )


def _guidance(target: float, estimate: float, cfg: NavConfig) -> float:
    correction = cfg.guidance_gain * (target - estimate)
    return target + float(clip(correction, -cfg.guidance_limit_m_s, cfg.guidance_limit_m_s))


def run_episode(
    world: World2D,
    cfg: NavConfig,
    seed: int,
    max_time_s: float,
    start: Optional[CameraPose] = None,
    intrinsics: Optional[CameraIntrinsics] = None,
    pipeline: Optional[EdgeFSPipeline] = None,
    progress: bool = False,
) -> EpisodeLog:
    """
    Flies the avoidance loop in `world` until a collision or `max_time_s`.

    Every tick renders the stereo pair at the true pose, runs Edge-FS, and feeds only its outputs (nearest
    obstacle, median-filtered velocity) and the gyro to the controller. The velocity command is the FSM
    reference plus the force field, corrected by the guidance term outside of turns when the estimate is
    valid.

    Args:
        world (World2D): Scene to fly in.
        cfg (NavConfig): Avoidance and dynamics parameters.
        seed (int): Seeds the start pose (when `start` is None), turn directions and image ripple.
        max_time_s (float): Longest flight.
        start (CameraPose): Start pose; drawn from `seed` near the world center if None.
        intrinsics (CameraIntrinsics): Camera; the default preset if None.
        pipeline (EdgeFSPipeline): Perception; a default pipeline if None.
        progress (bool): Show a progress bar over ticks.

    Returns:
        EpisodeLog: Per-tick log, collision flag and flown duration.
    """
    intrinsics = get_intrinsics_preset() if intrinsics is None else intrinsics
    pipeline = EdgeFSPipeline(intrinsics) if pipeline is None else pipeline
    pipeline.reset()
    rng = default_rng(seed)
    state = NavState(pose=random_start(world, seed) if start is None else start)
    dt = cfg.dt_s

    rows = []
    n_ticks = int(round(max_time_s * cfg.control_rate_hz))
    for i in tqdm(range(n_ticks), desc=f"Episode {seed}:", disable=not progress):
        t = i * dt
        state = replace(state, sim_time_s=t)
        frame, _ = render_stereo(world, state.pose, intrinsics, seed=seed, timestamp_s=t)
        result = pipeline.process(frame)
        nearest = None if result.nearest is None else result.nearest.distance_m
        est = result.estimate

        sign = 1.0
        if cfg.turn_direction == "random":
            sign = 1.0 if rng.random() < 0.5 else -1.0
        out = step_fsm(state, nearest, cfg, turn_sign=sign)
        vx_ref = out.vel_ref[0] + force_field(nearest, cfg)
        vy_ref = out.vel_ref[1]
        if out.state.mode is not NavMode.TURN and est.valid:
            vx_ref = _guidance(vx_ref, est.vx_m_s, cfg)
            vy_ref = _guidance(vy_ref, est.vy_m_s, cfg)

        pose = state.pose
        rows.append(
            {
                "t": t,
                "x": pose.pos_x_m,
                "y": pose.pos_y_m,
                "yaw": pose.yaw_rad,
                "vx": pose.vx_m_s,
                "vy": pose.vy_m_s,
                "yaw_rate": pose.yaw_rate_rad_s,
                "mode": out.state.mode.value,
                "nearest_m": nan if nearest is None else nearest,
                "vx_est": est.vx_m_s,
                "vy_est": est.vy_m_s,
                "est_valid": est.valid,
                "vx_cmd": vx_ref,
                "vy_cmd": vy_ref,
                "yaw_rate_cmd": out.yaw_rate_ref,
            }
        )
        state = step_dynamics(out.state, (vx_ref, vy_ref), out.yaw_rate_ref, dt, cfg, world)
        if state.collided:
            break

    duration_s = state.sim_time_s
    if state.collided:
        logging.info("  Episode %s: collision after %.1f s", seed, duration_s)
    else:
        logging.info("  Episode %s: no collision in %.1f s", seed, duration_s)
    return EpisodeLog(
        ticks=DataFrame(rows),
        collision=state.collided,
        duration_s=duration_s,
        seed=seed,
        world=world.name,
    )


def run_episodes(
    preset: str,
    cfg: NavConfig,
    seed: int,
    episodes: int,
    max_time_s: float,
    out_dir: Optional[Union[str, Path]] = None,
    intrinsics: Optional[CameraIntrinsics] = None,
    progress: bool = True,
) -> DataFrame:
    """
    Runs `episodes` flights with seeds `seed, seed + 1, ...` in fresh builds of a world preset.

    Returns:
        DataFrame: One row per episode with seed, duration_s, collision and survived (flew `max_time_s`
            without collision). Logs go to `out_dir/episode_<i>.csv|json` when `out_dir` is given.
    """
    rows = []
    for i in tqdm(range(episodes), desc="Episodes:", disable=not progress):
        ep_seed = seed + i
        world, _ = build_world(preset, seed=ep_seed)
        log = run_episode(world, cfg, ep_seed, max_time_s, intrinsics=intrinsics)
        if out_dir is not None:
            log.save(out_dir, f"episode_{i:03d}")
        rows.append(
            {
                "seed": ep_seed,
                "duration_s": log.duration_s,
                "collision": log.collision,
                "survived": not log.collision
                and log.duration_s >= max_time_s - 0.5 * cfg.dt_s,
            }
        )
    df = DataFrame(rows)
    logging.info("  %s of %s episode(s) survived", int(df["survived"].sum()), len(df))
    return df
