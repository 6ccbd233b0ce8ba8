"""Enumeration of the avoidance machine's transition function."""
from itertools import product
from typing import Dict, Set

from pandas import DataFrame

from edge_fs.nav_sim._config import NavConfig
from edge_fs.nav_sim._fsm import NavMode, NavState, step_fsm
from edge_fs.scene_sim import CameraPose

OBSTACLE_CASES = ("none", "near", "far")


def _nearest(case: str, cfg: NavConfig):
    if case == "none":
        return None
    if case == "near":
        return cfg.obstacle_threshold_m / 2
    return cfg.obstacle_threshold_m * 2


def transition_table(cfg: NavConfig = NavConfig()) -> DataFrame:
    """
    Next mode for every mode, obstacle case ("none", "near", "far") and timer state.

    `timer_done` means the hover time has elapsed (Hover) or the turn angle is accumulated (Turn); it has no
    effect in the other modes.
    """
    rows = []
    pose = CameraPose(0.0, 0.0, 0.0)
    for mode, case, timer_done in product(NavMode, OBSTACLE_CASES, (False, True)):
        state = NavState(
            pose=pose,
            mode=mode,
            mode_entry_time_s=0.0,
            sim_time_s=cfg.hover_duration_s if timer_done else 0.0,
            turn_progress_rad=cfg.turn_angle_rad if timer_done else 0.0,
        )
        out = step_fsm(state, _nearest(case, cfg), cfg)
        rows.append(
            {
                "mode": mode.value,
                "obstacle": case,
                "timer_done": timer_done,
                "next_mode": out.state.mode.value,
            }
        )
    return DataFrame(rows)


def successors(table: DataFrame) -> Dict[str, Set[str]]:
    return {
        mode: set(group["next_mode"]) for mode, group in table.groupby("mode")
    }


def reachable_modes(table: DataFrame, start: NavMode = NavMode.CHECK) -> Set[str]:
    """Modes reachable from `start` under some sequence of inputs."""
    succ = successors(table)
    seen, frontier = {start.value}, [start.value]
    while frontier:
        for nxt in succ.get(frontier.pop(), set()):
            if nxt not in seen:
                seen.add(nxt)
                frontier.append(nxt)
    return seen


def is_deadlock_free(table: DataFrame) -> bool:
    """True if every mode can reach every other mode, so no set of modes traps the machine."""
    modes = {mode.value for mode in NavMode}
    return all(reachable_modes(table, NavMode(mode)) == modes for mode in modes)
