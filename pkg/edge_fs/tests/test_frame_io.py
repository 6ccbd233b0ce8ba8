import json
from math import pi

import pytest
from numpy import arange, uint8, zeros
from sure import expect

from edge_fs._errors import (
    DataError,
    FrameIOError,
    ManifestMissingFileError,
    ManifestSchemaError,
    NonMonotonicTimestampError,
    PGMDimensionError,
    PGMHeaderError,
    PGMTruncatedError,
)
from edge_fs.frame_io import (
    CameraIntrinsics,
    GrayImage,
    StereoFrame,
    check_monotonic,
    get_intrinsics_preset,
    load_manifest,
    load_pgm,
    read_pgm_header,
    save_pgm,
)
from edge_fs.tests.data import (
    ASCII_PGM,
    FOCAL_PX,
    SIXTEEN_BIT_PGM,
    TINY_PGM,
    TRUNCATED_PGM,
    ZERO_WIDTH_PGM,
)


def _write_manifest(root, frames, intrinsics=None):
    intrinsics = get_intrinsics_preset() if intrinsics is None else intrinsics
    blank = GrayImage.from_array(zeros((96, 128), dtype=uint8))
    save_pgm(blank, root / "blank.pgm")
    doc = {"intrinsics": intrinsics.to_manifest_dict(), "frames": frames}
    path = root / "manifest.json"
    path.write_text(json.dumps(doc))
    return path


def _frame(t, gt=None, left="blank.pgm"):
    frame = {"t": t, "left": left, "right": "blank.pgm", "gyro_z": 0.0}
    if gt is not None:
        frame["gt"] = gt
    return frame


GT = {"vx": 0.0, "vy": 0.3, "yaw": 90.0, "x": 0.0, "y": 0.0}


class TestCameraIntrinsics:
    def test_preset_focal_length(self, intr):
        assert intr.focal_px == pytest.approx(FOCAL_PX, abs=1e-3)
        expect(intr.check_focal()).to.be.true
        expect((intr.width_px, intr.height_px)).to.equal((128, 96))

    def test_normalized_columns_are_zero_at_image_center(self, intr):
        x = intr.normalized_columns()
        expect(x.shape).to.equal((128,))
        assert x[64] == 0.0
        assert x[0] == pytest.approx(-64 / FOCAL_PX, abs=1e-6)

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"baseline_m": 0.0},
            {"width_px": 0},
            {"fov_h_rad": pi},
        ],
    )
    def test_invalid_parameters_raise(self, kwargs):
        params = dict(
            width_px=128, height_px=96, fov_h_rad=1.0, fov_v_rad=0.8, baseline_m=0.06
        )
        params.update(kwargs)
        with pytest.raises(DataError):
            CameraIntrinsics(**params)

    def test_unknown_preset_raises(self):
        with pytest.raises(DataError):
            get_intrinsics_preset("no-such-board")


class TestGrayImage:
    def test_pixels_are_read_only(self):
        img = GrayImage.from_array(zeros((3, 4), dtype=uint8))
        expect((img.width_px, img.height_px)).to.equal((4, 3))
        with pytest.raises(ValueError):
            img.pixels[0, 0] = 1

    def test_rejects_non_uint8(self):
        with pytest.raises(DataError):
            GrayImage.from_array(zeros((3, 4)))

    def test_stereo_frame_needs_equal_sizes(self):
        with pytest.raises(DataError):
            StereoFrame(
                timestamp_s=0.0,
                left=GrayImage.from_array(zeros((3, 4), dtype=uint8)),
                right=GrayImage.from_array(zeros((4, 4), dtype=uint8)),
            )


class TestPGM:
    def test_load_with_header_comment(self, tmp_path):
        path = tmp_path / "tiny.pgm"
        path.write_bytes(TINY_PGM)
        img = load_pgm(path)
        expect(img.pixels.tolist()).to.equal([[0, 1], [254, 255]])
        expect(read_pgm_header(path)).to.equal((2, 2))

    def test_header_after_a_long_comment(self, tmp_path):
        path = tmp_path / "commented.pgm"
        comment = b"# " + b"x" * 2000 + b"\n"
        path.write_bytes(b"P5\n" + comment + b"3 2\n255\n" + bytes(6))
        expect(read_pgm_header(path)).to.equal((3, 2))
        expect(load_pgm(path).pixels.shape).to.equal((2, 3))

    def test_header_of_a_file_cut_inside_the_header(self, tmp_path):
        path = tmp_path / "cut.pgm"
        path.write_bytes(b"P5\n128 9")
        with pytest.raises(PGMHeaderError):
            read_pgm_header(path)

    def test_save_then_load_is_bit_exact(self, tmp_path):
        pixels = (arange(96 * 128) % 256).astype(uint8).reshape(96, 128)
        img = GrayImage.from_array(pixels)
        save_pgm(img, tmp_path / "frame.pgm")
        loaded = load_pgm(tmp_path / "frame.pgm")
        expect(loaded == img).to.be.true
        expect(loaded.tobytes()).to.equal(img.tobytes())

    @pytest.mark.parametrize(
        "payload, error",
        [
            (TRUNCATED_PGM, PGMTruncatedError),
            (ASCII_PGM, PGMHeaderError),
            (SIXTEEN_BIT_PGM, PGMHeaderError),
            (ZERO_WIDTH_PGM, PGMDimensionError),
            (b"P5\n2 2", PGMHeaderError),
        ],
    )
    def test_malformed_files_raise(self, tmp_path, payload, error):
        path = tmp_path / "bad.pgm"
        path.write_bytes(payload)
        with pytest.raises(error):
            load_pgm(path)

    def test_missing_file_is_an_io_error(self, tmp_path):
        with pytest.raises(FrameIOError) as exc:
            load_pgm(tmp_path / "missing.pgm")
        expect(isinstance(exc.value, OSError)).to.be.true


class TestManifest:
    def test_generated_dataset_loads(self, lateral_dataset):
        manifest = load_manifest(lateral_dataset.root / "manifest.json")
        expect(len(manifest)).to.equal(30)
        expect(manifest.has_ground_truth).to.be.true
        expect(manifest.intrinsics.width_px).to.equal(128)
        frame = manifest.load_frame(3)
        assert frame.timestamp_s == pytest.approx(0.1)
        expect(frame.left == lateral_dataset.load_frame(3).left).to.be.true

    def test_to_dataframe_has_ground_truth_columns(self, lateral_dataset):
        df = lateral_dataset.to_dataframe()
        expect(list(df.columns)).to.equal(
            ["t", "gyro_z", "vx_gt", "vy_gt", "yaw_gt", "x_gt", "y_gt"]
        )
        assert df["vy_gt"].tolist() == pytest.approx([0.3] * 30)

    def test_angles_are_stored_in_degrees(self, tmp_path):
        path = _write_manifest(tmp_path, [_frame(0.0, GT), _frame(0.1, GT)])
        manifest = load_manifest(path)
        assert manifest.frames[0].ground_truth.yaw_rad == pytest.approx(pi / 2)
        assert manifest.intrinsics.fov_h_rad == pytest.approx(
            get_intrinsics_preset().fov_h_rad
        )

    def test_without_ground_truth(self, tmp_path):
        manifest = load_manifest(_write_manifest(tmp_path, [_frame(0.0), _frame(0.1)]))
        expect(manifest.has_ground_truth).to.be.false
        expect(list(manifest.to_dataframe().columns)).to.equal(["t", "gyro_z"])

    def test_non_monotonic_timestamps_raise(self, tmp_path):
        path = _write_manifest(tmp_path, [_frame(0.1), _frame(0.1)])
        with pytest.raises(NonMonotonicTimestampError):
            load_manifest(path)

    def test_missing_image_raises(self, tmp_path):
        path = _write_manifest(tmp_path, [_frame(0.0, left="gone.pgm")])
        with pytest.raises(ManifestMissingFileError):
            load_manifest(path)

    def test_partial_ground_truth_raises(self, tmp_path):
        path = _write_manifest(tmp_path, [_frame(0.0, GT), _frame(0.1)])
        with pytest.raises(ManifestSchemaError):
            load_manifest(path)

    def test_image_size_must_match_intrinsics(self, tmp_path):
        intrinsics = CameraIntrinsics.from_degrees(64, 48, 57.4, 44.5, 0.06)
        path = _write_manifest(tmp_path, [_frame(0.0)], intrinsics=intrinsics)
        with pytest.raises(ManifestSchemaError):
            load_manifest(path)

    def test_empty_frame_list_raises(self, tmp_path):
        with pytest.raises(ManifestSchemaError):
            load_manifest(_write_manifest(tmp_path, []))

    def test_invalid_json_raises(self, tmp_path):
        path = tmp_path / "manifest.json"
        path.write_text("{not json")
        with pytest.raises(ManifestSchemaError):
            load_manifest(path)

    def test_unreadable_manifest_is_an_io_error(self, tmp_path):
        with pytest.raises(FrameIOError):
            load_manifest(tmp_path / "missing.json")

    def test_check_monotonic(self):
        check_monotonic([0.0, 0.1, 0.2])
        with pytest.raises(NonMonotonicTimestampError):
            check_monotonic([0.0, 0.2, 0.1])
