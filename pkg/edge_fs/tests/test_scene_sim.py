from math import pi

import pytest
from numpy import array, array_equal, isfinite, isnan, median
from sure import expect

from edge_fs._errors import DataError
from edge_fs.edge_distribution import edge_distribution
from edge_fs.edge_stereo import compute_disparity
from edge_fs.frame_io import load_manifest
from edge_fs.scene_sim import (
    MANIFEST_NAME,
    CameraPose,
    Motion,
    WallSegment,
    build_world,
    cast_rays,
    eye_positions,
    generate_sequence,
    poster_texture,
    render_stereo,
    scripted_trajectory,
)
from edge_fs.scene_sim._render import column_angles
from edge_fs.tests.data import DISPARITY_AT_1M_PX


class TestWorld:
    def test_poster_texture_is_seeded(self):
        a = poster_texture(2.0, seed=3)
        b = poster_texture(2.0, seed=3)
        expect(array_equal(a.intensity, b.intensity)).to.be.true
        expect(array_equal(a.intensity, poster_texture(2.0, seed=4).intensity)).to.be.false
        expect(bool(a.intensity.min() >= 30 and a.intensity.max() <= 225)).to.be.true

    def test_textureless_wall(self):
        texture = poster_texture(1.0, seed=0, edges_per_m=0.0)
        expect(set(texture.intensity.tolist())).to.equal({127.5})

    def test_segment_distance(self):
        wall = WallSegment(1.0, -1.0, 1.0, 1.0, poster_texture(2.0, seed=0))
        assert wall.length_m == pytest.approx(2.0)
        assert wall.distance_to(0.0, 0.0) == pytest.approx(1.0)
        assert wall.distance_to(1.0, 3.0) == pytest.approx(2.0)

    def test_degenerate_segment_raises(self):
        with pytest.raises(DataError):
            WallSegment(1.0, 1.0, 1.0, 1.0, poster_texture(1.0, seed=0))

    @pytest.mark.parametrize("name", ["room4x4", "flat-wall", "blank-wall", "pole-field"])
    def test_presets(self, name):
        world, start = build_world(name, seed=1)
        expect(world.name).to.equal(name)
        expect(world.contains(start.pos_x_m, start.pos_y_m)).to.be.true
        expect(world.distance_to_nearest(start.pos_x_m, start.pos_y_m) > 0.5).to.be.true

    def test_unknown_preset_raises(self):
        with pytest.raises(DataError):
            build_world("moon-base")


class TestRender:
    def test_cast_rays(self):
        world, _ = build_world("flat-wall", seed=0)
        range_m, intensity = cast_rays(world, 0.0, 0.0, array([0.0, pi]))
        assert range_m[0] == pytest.approx(1.0)
        expect(bool(isfinite(range_m[1]))).to.be.false
        assert intensity[1] == 128.0

    def test_pose_outside_the_world_raises(self, intr):
        world, _ = build_world("room4x4")
        with pytest.raises(DataError):
            render_stereo(world, CameraPose(5.0, 2.0, 0.0), intr)
        with pytest.raises(DataError):
            cast_rays(world, 2.0, -0.5, array([0.0]))
        world, _ = build_world("flat-wall", distance_m=2.0)
        with pytest.raises(DataError):
            render_stereo(world, CameraPose(2.5, 0.0, pi), intr)

    def test_column_angles(self, intr):
        angles = column_angles(intr, yaw_rad=0.3)
        assert angles[64] == pytest.approx(0.3)
        expect(bool(angles[0] > angles[127])).to.be.true

    def test_eyes_are_a_baseline_apart(self):
        left, right = eye_positions(CameraPose(0.0, 0.0, 0.0), 0.06)
        assert left == pytest.approx((0.0, 0.03))
        assert right == pytest.approx((0.0, -0.03))

    def test_fronto_parallel_wall(self, intr):
        world, start = build_world("flat-wall", seed=0)
        frame, truth = render_stereo(world, start, intr, seed=0, timestamp_s=0.5)
        expect(frame.left.pixels.shape).to.equal((96, 128))
        expect(frame.timestamp_s).to.equal(0.5)
        expect(bool(truth.hit.all())).to.be.true
        assert truth.depth_m.min() == pytest.approx(1.0)
        assert truth.depth_m.max() == pytest.approx(1.0)
        expect(bool(truth.range_m[0] > truth.range_m[64])).to.be.true

        profile = compute_disparity(
            edge_distribution(frame.left), edge_distribution(frame.right)
        )
        disparity = median(profile.displacement_px[profile.confident])
        assert disparity == pytest.approx(DISPARITY_AT_1M_PX, abs=0.5)

    def test_rendering_is_deterministic(self, intr):
        world, start = build_world("room4x4", seed=2)
        a, _ = render_stereo(world, start, intr, seed=5)
        b, _ = render_stereo(world, start, intr, seed=5)
        expect(a.left == b.left and a.right == b.right).to.be.true

    def test_gyro_is_the_pose_yaw_rate(self, intr):
        world, _ = build_world("room4x4", seed=0)
        frame, _ = render_stereo(world, CameraPose(2.0, 2.0, 0.0, yaw_rate_rad_s=0.5), intr)
        expect(frame.gyro_z_rad_s).to.equal(0.5)

    def test_sky_has_no_depth(self, intr):
        world, _ = build_world("flat-wall", seed=0)
        _, truth = render_stereo(world, CameraPose(0.0, 0.0, pi), intr)
        expect(bool(isnan(truth.depth_m).all())).to.be.true


class TestTrajectory:
    def test_parse_motion(self):
        assert Motion.parse("lateral:0.3") == Motion("lateral", 0.3)
        assert Motion.parse("static") == Motion("static", 0.0)

    @pytest.mark.parametrize("text", ["hover:1", "lateral:fast"])
    def test_bad_motion_raises(self, text):
        with pytest.raises(DataError):
            Motion.parse(text)

    def test_lateral_frames(self):
        poses = scripted_trajectory(Motion("lateral", 0.3), CameraPose(0.0, 0.0, 0.0), 3.0)
        expect(len(poses)).to.equal(90)
        last = poses[-1]
        # rightward is -y when facing +x
        assert last.pos_y_m == pytest.approx(-0.3 * 89 / 30)
        expect(last.vel_body).to.equal((0.0, 0.3))

    def test_yaw_frames(self):
        poses = scripted_trajectory(Motion("yaw", 0.5), CameraPose(2.0, 2.0, 0.0), 1.0)
        assert poses[30 - 1].yaw_rad == pytest.approx(0.5 * 29 / 30)
        expect(poses[10].yaw_rate_rad_s).to.equal(0.5)

    def test_sway_velocity(self):
        poses = scripted_trajectory(Motion("sway", 0.3), CameraPose(0.0, 0.0, 0.0), 6.0)
        assert poses[45].vy_m_s == pytest.approx(0.3)
        assert poses[0].pos_y_m == pytest.approx(0.0)

    def test_nonpositive_duration_raises(self):
        with pytest.raises(DataError):
            scripted_trajectory(Motion("static"), CameraPose(0.0, 0.0, 0.0), 0.0)


class TestDataset:
    def test_generated_files(self, lateral_dataset):
        root = lateral_dataset.root
        expect((root / MANIFEST_NAME).is_file()).to.be.true
        expect((root / "frames" / "left_00029.pgm").is_file()).to.be.true
        expect(len(lateral_dataset)).to.equal(30)

    def test_generation_is_deterministic(self, intr, tmp_path):
        world, start = build_world("flat-wall", seed=7)
        poses = scripted_trajectory(Motion("lateral", 0.3), start, 0.2)
        generate_sequence(world, poses, intr, seed=7, out_dir=tmp_path / "a", progress=False)
        generate_sequence(world, poses, intr, seed=7, out_dir=tmp_path / "b", progress=False)
        for name in (MANIFEST_NAME, "frames/left_00005.pgm", "frames/right_00005.pgm"):
            expect((tmp_path / "a" / name).read_bytes()).to.equal((tmp_path / "b" / name).read_bytes())
        manifest = load_manifest(tmp_path / "a" / MANIFEST_NAME)
        expect(len(manifest)).to.equal(6)
