import pytest
from numpy import abs as np_abs
from numpy import full, nan, roll, uint8
from sure import expect

from edge_fs._errors import GeometryError, ImageTooSmallError
from edge_fs.block_matcher import MatchConfig
from edge_fs.edge_distribution import EdgeDistribution
from edge_fs.frame_io import GrayImage
from edge_fs.oracles import analytic_flow, dense_block_flow, exhaustive_match_1d
from edge_fs.scene_sim import FRAME_RATE_HZ
from edge_fs.tests.data import DEROTATION_AT_HALF_RAD_S_PX_S, LATERAL_FLOW_AT_1M_PX_S


class TestExhaustiveMatch:
    def test_known_shift(self, rng):
        ref = EdgeDistribution(values=rng.integers(0, 1000, size=128))
        profile = exhaustive_match_1d(ref, EdgeDistribution(values=roll(ref.values, 4)))
        expect(set(profile.integer_px[profile.valid].tolist())).to.equal({4})
        expect(int(profile.valid.sum())).to.equal(88)


class TestAnalyticFlow:
    def test_lateral_motion_is_uniform(self, intr):
        flow = analytic_flow(intr, 0.0, 0.3, 0.0, 1.0) * intr.focal_px
        assert flow.min() == pytest.approx(-LATERAL_FLOW_AT_1M_PX_S, abs=0.01)
        assert flow.max() == pytest.approx(-LATERAL_FLOW_AT_1M_PX_S, abs=0.01)

    def test_pure_yaw(self, intr):
        flow = analytic_flow(intr, 0.0, 0.0, 0.5, 2.0) * intr.focal_px
        assert flow[0] == pytest.approx(DEROTATION_AT_HALF_RAD_S_PX_S, abs=0.01)

    def test_forward_motion_expands_from_center(self, intr):
        flow = analytic_flow(intr, 0.3, 0.0, 0.0, full(128, 1.0))
        assert flow[64] == 0.0
        expect(bool(flow[100] > 0)).to.be.true
        expect(bool(flow[20] < 0)).to.be.true

    def test_missing_depth_gives_nan(self, intr):
        depth = full(128, 1.0)
        depth[5] = nan
        flow = analytic_flow(intr, 0.3, 0.0, 0.0, depth)
        expect(int(flow.size - (flow == flow).sum())).to.equal(1)

    def test_nonpositive_depth_raises(self, intr):
        with pytest.raises(GeometryError):
            analytic_flow(intr, 0.3, 0.0, 0.0, 0.0)


class TestDenseBlockFlow:
    def test_recovers_2d_shift(self, rng):
        a = rng.integers(0, 256, size=(96, 128)).astype(uint8)
        b = roll(a, shift=(1, 2), axis=(0, 1))
        cfg = MatchConfig(window_px=11, search_range_px=4)
        field = dense_block_flow(GrayImage.from_array(a), GrayImage.from_array(b), cfg)
        expect(bool(field.valid.all())).to.be.true
        expect(set(field.du.ravel().tolist())).to.equal({2})
        expect(set(field.dv.ravel().tolist())).to.equal({1})
        expect(int(field.rows[0])).to.equal(9)

    def test_too_small_image_raises(self, rng):
        a = GrayImage.from_array(rng.integers(0, 256, size=(20, 20)).astype(uint8))
        with pytest.raises(ImageTooSmallError):
            dense_block_flow(a, a)


@pytest.mark.slow
class TestEmpiricalAgreement:
    @pytest.mark.parametrize("distance_m", [1.0, 2.0])
    def test_edge_flow_matches_pinhole_prediction(self, simulate, intr, distance_m):
        # one wall parallel to the image plane: every column sees the same depth
        df, results = simulate("flat-wall", "lateral:0.3", 2.0, distance_m=distance_m)
        within, total = 0, 0
        for row, result in zip(df.itertuples(), results):
            if result.flow is None:
                continue
            predicted = analytic_flow(intr, row.vx_gt, row.vy_gt, 0.0, distance_m) * intr.focal_px
            valid = result.flow.valid
            error_px = np_abs(result.flow.flow_px_s[valid] - predicted[valid]) / FRAME_RATE_HZ
            within += int((error_px <= 0.5).sum())
            total += int(valid.sum())
        expect(bool(total > 0)).to.be.true
        expect(bool(within >= 0.9 * total)).to.be.true
