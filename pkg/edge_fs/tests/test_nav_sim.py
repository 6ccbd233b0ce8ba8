import json
from dataclasses import replace
from math import pi, radians

import pytest
from pandas.testing import assert_frame_equal
from sure import expect

from edge_fs._errors import DataError
from edge_fs.nav_sim import (
    NavConfig,
    NavMode,
    NavState,
    force_field,
    is_deadlock_free,
    random_start,
    reachable_modes,
    run_episode,
    run_episodes,
    step_dynamics,
    step_fsm,
    transition_table,
)
from edge_fs.scene_sim import CameraPose, build_world

CFG = NavConfig()
ORIGIN = CameraPose(0.0, 0.0, 0.0)


def _state(mode, **kwargs):
    return NavState(pose=ORIGIN, mode=mode, **kwargs)


class TestNavConfig:
    def test_defaults(self):
        assert CFG.dt_s == pytest.approx(1 / 30)
        expect(CFG.turn_direction).to.equal("positive")

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"turn_angle_rad": pi},
            {"turn_angle_rad": 0.0},
            {"cruise_speed_m_s": -0.1},
            {"hover_duration_s": 0.0},
            {"control_rate_hz": -30.0},
            {"turn_direction": "left"},
        ],
    )
    def test_invalid(self, kwargs):
        with pytest.raises(DataError):
            NavConfig(**kwargs)


class TestStepFsm:
    def test_check_with_far_obstacle_flies_forward(self):
        out = step_fsm(_state(NavMode.CHECK), 2.5, CFG)
        assert out.state.mode is NavMode.FORWARD
        expect(out.vel_ref).to.equal((0.3, 0.0))
        expect(out.yaw_rate_ref).to.equal(0.0)

    def test_check_without_obstacle_flies_forward(self):
        assert step_fsm(_state(NavMode.CHECK), None, CFG).state.mode is NavMode.FORWARD

    def test_check_with_near_obstacle_hovers(self):
        out = step_fsm(_state(NavMode.CHECK), 0.5, CFG)
        assert out.state.mode is NavMode.HOVER
        expect(out.vel_ref).to.equal((0.0, 0.0))

    def test_forward_stops_only_below_threshold(self):
        assert step_fsm(_state(NavMode.FORWARD), 1.0, CFG).state.mode is NavMode.FORWARD
        assert step_fsm(_state(NavMode.FORWARD), 0.99, CFG).state.mode is NavMode.HOVER

    def test_mode_entry_time_is_tick_time(self):
        out = step_fsm(_state(NavMode.FORWARD, sim_time_s=4.0), 0.5, CFG)
        expect(out.state.mode_entry_time_s).to.equal(4.0)

    def test_hover_lasts_one_second(self):
        state = step_fsm(_state(NavMode.FORWARD), 0.5, CFG).state
        hover_ticks = 1
        for i in range(1, 100):
            state = step_fsm(replace(state, sim_time_s=i * CFG.dt_s), 0.5, CFG).state
            if state.mode is not NavMode.HOVER:
                break
            hover_ticks += 1
        expect(hover_ticks).to.equal(30)
        assert state.mode is NavMode.TURN

    def test_turn_accumulates_turn_angle(self):
        state = _state(NavMode.HOVER, sim_time_s=CFG.hover_duration_s)
        heading, ticks = 0.0, 0
        out = step_fsm(state, 0.5, CFG)
        while out.state.mode is NavMode.TURN and ticks < 100:
            heading += out.yaw_rate_ref * CFG.dt_s
            ticks += 1
            out = step_fsm(out.state, 0.5, CFG)
        assert heading == pytest.approx(radians(60), abs=1e-9)
        expect(ticks).to.equal(32)
        assert out.state.mode is NavMode.CHECK

    def test_turn_until_clear_keeps_turning(self):
        cfg = NavConfig(turn_until_clear=True)
        state = _state(NavMode.TURN, turn_progress_rad=cfg.turn_angle_rad)
        out = step_fsm(state, 0.5, cfg)
        assert out.state.mode is NavMode.TURN
        expect(out.yaw_rate_ref).to.equal(1.0)
        assert step_fsm(state, None, cfg).state.mode is NavMode.CHECK

    def test_turn_sign_is_latched(self):
        out = step_fsm(_state(NavMode.HOVER, sim_time_s=1.0), 0.5, CFG, turn_sign=-1.0)
        expect(out.yaw_rate_ref).to.equal(-1.0)
        out = step_fsm(out.state, 0.5, CFG, turn_sign=1.0)
        expect(out.yaw_rate_ref).to.equal(-1.0)


class TestForceField:
    def test_values(self):
        expect(force_field(2.0, CFG)).to.equal(0.0)
        expect(force_field(None, CFG)).to.equal(0.0)
        assert force_field(0.6, CFG) == pytest.approx(-0.1)

    def test_monotonic(self):
        values = [force_field(0.05 * i, CFG) for i in range(1, 30)]
        expect(values).to.equal(sorted(values))


class TestStepDynamics:
    def setup_method(self):
        self.world, _ = build_world("room4x4")

    def test_first_order_tracking(self):
        state = NavState(pose=CameraPose(2.0, 2.0, 0.0))
        nxt = step_dynamics(state, (0.3, 0.0), 0.0, CFG.dt_s, CFG, self.world)
        assert nxt.pose.vx_m_s == pytest.approx(0.0333, abs=1e-4)
        assert nxt.pose.pos_x_m == pytest.approx(2.0 + 0.0333 / 30, abs=1e-5)
        assert nxt.sim_time_s == pytest.approx(CFG.dt_s)
        expect(nxt.collided).to.be.false

    def test_equilibrium(self):
        state = NavState(pose=CameraPose(2.0, 2.0, 0.0, vx_m_s=0.3))
        nxt = step_dynamics(state, (0.3, 0.0), 0.0, CFG.dt_s, CFG, self.world)
        assert nxt.pose.vx_m_s == pytest.approx(0.3)

    def test_sideways_motion_goes_right(self):
        state = NavState(pose=CameraPose(2.0, 2.0, 0.0, vy_m_s=0.3))
        nxt = step_dynamics(state, (0.0, 0.3), 0.0, CFG.dt_s, CFG, self.world)
        expect(bool(nxt.pose.pos_y_m < 2.0)).to.be.true

    def test_yaw_rate_is_applied(self):
        state = NavState(pose=CameraPose(2.0, 2.0, 0.0))
        nxt = step_dynamics(state, (0.0, 0.0), 1.0, CFG.dt_s, CFG, self.world)
        assert nxt.pose.yaw_rad == pytest.approx(1 / 30)

    def test_collision(self):
        state = NavState(pose=CameraPose(3.96, 2.0, 0.0))
        nxt = step_dynamics(state, (0.0, 0.0), 0.0, CFG.dt_s, CFG, self.world)
        expect(nxt.collided).to.be.true

    def test_leaving_the_world_bounds_is_a_collision(self):
        world, _ = build_world("flat-wall")
        state = NavState(pose=CameraPose(0.0, -9.9, 0.0, vy_m_s=0.6))
        nxt = step_dynamics(state, (0.0, 0.6), 0.0, 0.1, CFG, world)
        expect(bool(nxt.pose.pos_y_m < -9.95)).to.be.true
        expect(nxt.collided).to.be.true

    @pytest.mark.parametrize("dt", [0.0, -0.1])
    def test_non_positive_step(self, dt):
        with pytest.raises(DataError):
            step_dynamics(NavState(pose=ORIGIN), (0.0, 0.0), 0.0, dt, CFG, self.world)


class TestTransitionTable:
    def test_covers_all_inputs(self):
        table = transition_table()
        expect(len(table)).to.equal(24)
        expect(set(table["next_mode"])).to.equal({mode.value for mode in NavMode})

    def test_reachable_and_deadlock_free(self):
        table = transition_table()
        expect(reachable_modes(table)).to.equal({mode.value for mode in NavMode})
        expect(is_deadlock_free(table)).to.be.true

    def test_hover_waits_for_timer(self):
        table = transition_table().set_index(["mode", "obstacle", "timer_done"])
        expect(table.at[("hover", "near", False), "next_mode"]).to.equal("hover")
        expect(table.at[("hover", "near", True), "next_mode"]).to.equal("turn")
        expect(table.at[("turn", "none", True), "next_mode"]).to.equal("check")


class TestEpisodes:
    def test_random_start(self):
        world, _ = build_world("room4x4")
        a, b = random_start(world, 3), random_start(world, 3)
        assert a == b
        expect(1.5 <= a.pos_x_m <= 2.5).to.be.true
        expect(1.5 <= a.pos_y_m <= 2.5).to.be.true

    def test_hovering_in_place_survives(self):
        world, _ = build_world("room4x4", seed=0)
        cfg = NavConfig(cruise_speed_m_s=0.0)
        log = run_episode(world, cfg, seed=0, max_time_s=3.0)
        expect(log.collision).to.be.false
        expect(len(log.ticks)).to.equal(90)
        assert log.duration_s == pytest.approx(3.0)
        expect(log.world).to.equal("room4x4")

        again = run_episode(world, cfg, seed=0, max_time_s=3.0)
        assert_frame_equal(log.ticks, again.ticks)

    def test_save(self, tmp_path):
        world, _ = build_world("room4x4", seed=1)
        log = run_episode(world, NavConfig(cruise_speed_m_s=0.0), seed=1, max_time_s=0.5)
        log.save(tmp_path / "logs", "episode_000")
        expect((tmp_path / "logs" / "episode_000.csv").exists()).to.be.true
        summary = json.loads((tmp_path / "logs" / "episode_000.json").read_text())
        expect(summary["collision"]).to.be.false
        expect(set(summary["modes_s"])).to.equal({"check", "forward", "hover", "turn"})

    def test_run_episodes(self, tmp_path):
        df = run_episodes(
            "room4x4",
            NavConfig(cruise_speed_m_s=0.0),
            seed=5,
            episodes=2,
            max_time_s=1.0,
            out_dir=tmp_path,
            progress=False,
        )
        expect(df["seed"].tolist()).to.equal([5, 6])
        expect(bool(df["survived"].all())).to.be.true
        expect((tmp_path / "episode_001.json").exists()).to.be.true


@pytest.mark.slow
class TestClosedLoopSurvival:
    def test_most_room_flights_survive(self):
        df = run_episodes("room4x4", CFG, seed=0, episodes=10, max_time_s=90.0, progress=False)
        expect(len(df)).to.equal(10)
        expect(int(df["survived"].sum()) >= 8).to.be.true
