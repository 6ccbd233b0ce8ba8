import pytest
from numpy import array, full, isnan, nan, ones, roll, zeros
from numpy.testing import assert_allclose
from sure import expect

from edge_fs._errors import DataError
from edge_fs.block_matcher import MatchProfile
from edge_fs.edge_distribution import EdgeDistribution
from edge_fs.edge_stereo import (
    DepthProfile,
    compute_disparity,
    depth_to_disparity,
    disparity_to_depth,
    nearest_obstacle,
)
from edge_fs.tests.data import DISPARITY_AT_1M_PX


def _profile(disparity, valid=None, low_confidence=None):
    """Matcher output with the given disparities (all columns valid unless told otherwise)."""
    disparity = array(disparity, dtype=float)
    n = disparity.shape[0]
    return MatchProfile(
        displacement_px=disparity,
        integer_px=disparity.round().astype(int),
        valid=ones(n, dtype=bool) if valid is None else array(valid),
        cost=zeros(n),
        low_confidence=zeros(n, dtype=bool) if low_confidence is None else array(low_confidence),
        degenerate_subpixel=zeros(n, dtype=bool),
        ambiguous=zeros(n, dtype=bool),
    )


def _depth(depth_m):
    depth_m = array(depth_m, dtype=float)
    return DepthProfile(disparity_px=1.0 / depth_m, depth_m=depth_m, valid=~isnan(depth_m))


class TestComputeDisparity:
    def test_positive_disparity(self, rng):
        left = EdgeDistribution(values=rng.integers(0, 1000, size=128))
        # a point at left column u appears at u - 5 on the right
        right = EdgeDistribution(values=roll(left.values, -5))
        profile = compute_disparity(left, right)
        valid = profile.valid
        expect(set(profile.integer_px[valid].tolist())).to.equal({5})
        assert abs(profile.displacement_px[valid] - 5).max() <= 0.5

    def test_disparity_stays_in_range(self, rng):
        left = EdgeDistribution(values=rng.integers(0, 1000, size=128))
        right = EdgeDistribution(values=rng.integers(0, 1000, size=128))
        profile = compute_disparity(left, right)
        disparity = profile.displacement_px[profile.valid]
        expect(bool((disparity >= 0).all())).to.be.true
        expect(bool((disparity <= 15).all())).to.be.true


class TestDisparityToDepth:
    def test_one_meter(self, intr):
        depth = disparity_to_depth(_profile(full(128, DISPARITY_AT_1M_PX)), intr)
        assert depth.depth_m[64] == pytest.approx(1.0, rel=1e-3)
        assert depth.mean_depth_m == pytest.approx(1.0, rel=1e-3)

    def test_small_disparity_is_beyond_range(self, intr):
        depth = disparity_to_depth(_profile([0.0, 0.2, 0.25, 1.0]), intr)
        expect(depth.valid.tolist()).to.equal([False, False, True, True])
        expect(bool(isnan(depth.depth_m[:2]).all())).to.be.true

    def test_low_confidence_columns_are_invalid(self, intr):
        depth = disparity_to_depth(
            _profile([5.0, 5.0], low_confidence=[True, False]), intr
        )
        expect(depth.valid.tolist()).to.equal([False, True])

    def test_nonpositive_threshold_raises(self, intr):
        with pytest.raises(DataError):
            disparity_to_depth(_profile([5.0]), intr, s_min=0.0)

    def test_mean_depth_without_valid_columns(self, intr):
        depth = disparity_to_depth(_profile([5.0], valid=[False]), intr)
        expect(bool(isnan(depth.mean_depth_m))).to.be.true


class TestNearestObstacle:
    def test_closest_window(self):
        depth = full(60, 2.0)
        depth[30:41] = 0.8
        obstacle = nearest_obstacle(_depth(depth))
        assert obstacle.distance_m == pytest.approx(0.8)
        expect(obstacle.column_index).to.equal(35)

    def test_windows_need_every_column_valid(self):
        depth = full(60, nan)
        depth[10:20] = 0.5
        depth[40:51] = 1.5
        obstacle = nearest_obstacle(_depth(depth))
        assert obstacle.distance_m == pytest.approx(1.5)

    def test_nothing_valid(self):
        expect(nearest_obstacle(_depth(full(60, nan)))).to.be.none

    def test_even_window_raises(self):
        with pytest.raises(DataError):
            nearest_obstacle(_depth(full(60, 1.0)), k_window=10)


class TestStereoProperties:
    def test_disparity_depth_round_trip(self, rng, intr):
        disparity = rng.uniform(0.25, 15.0, size=128)
        depth = disparity_to_depth(_profile(disparity), intr)
        expect(bool(depth.valid.all())).to.be.true
        assert_allclose(depth_to_disparity(depth.depth_m, intr), disparity, rtol=1e-12)
        assert float(depth_to_disparity(1.0, intr)) == pytest.approx(DISPARITY_AT_1M_PX, abs=1e-3)

    def test_nonpositive_depth_raises(self, intr):
        with pytest.raises(DataError):
            depth_to_disparity([1.0, 0.0], intr)

    @pytest.mark.parametrize("k_window", [1, 5, 11])
    def test_nearest_obstacle_is_the_closest_fully_valid_window(self, rng, k_window):
        for _ in range(50):
            depth = rng.uniform(0.3, 4.0, size=64)
            depth[rng.random(64) < 0.1] = nan
            obstacle = nearest_obstacle(_depth(depth), k_window)
            candidates = [
                (depth[s : s + k_window].mean(), s + k_window // 2)
                for s in range(64 - k_window + 1)
                if not isnan(depth[s : s + k_window]).any()
            ]
            if not candidates:
                expect(obstacle).to.be.none
                continue
            closest = min(candidates)
            assert obstacle.distance_m == pytest.approx(closest[0])
            expect(obstacle.column_index).to.equal(closest[1])
