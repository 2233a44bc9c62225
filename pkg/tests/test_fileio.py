"""Wire formats: dataset CSV and instance JSON."""

import numpy as np
import pytest

from curvebench import fileio
from curvebench.generator import make_descriptor


class TestPointCloudCsv:
    def test_roundtrip_is_bit_exact(self, tmp_path):
        rng = np.random.default_rng(0)
        pts = rng.normal(size=(20, 7)) * 10.0 ** rng.integers(-8, 8, size=(20, 7))
        path = tmp_path / "cloud.csv"
        fileio.write_point_cloud_csv(path, pts, prefix="x")
        back = fileio.read_point_cloud_csv(path, prefix="x")
        assert np.array_equal(back, pts)

    def test_header_names(self, tmp_path):
        path = tmp_path / "emb.csv"
        fileio.write_point_cloud_csv(path, np.zeros((2, 3)), prefix="y")
        assert path.read_text().splitlines()[0] == "y1,y2,y3"

    def test_wrong_prefix_rejected(self, tmp_path):
        path = tmp_path / "cloud.csv"
        fileio.write_point_cloud_csv(path, np.zeros((2, 2)), prefix="x")
        with pytest.raises(ValueError, match="header"):
            fileio.read_point_cloud_csv(path, prefix="y")

    def test_non_numeric_cell_rejected(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("y1,y2\n1.0,oops\n")
        with pytest.raises(ValueError, match="non-numeric"):
            fileio.read_point_cloud_csv(path, prefix="y")

    def test_repeated_writes_are_byte_identical(self, tmp_path):
        pts = np.array([[1 / 3, np.pi], [-1e-17, 2e300]])
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        fileio.write_point_cloud_csv(a, pts)
        fileio.write_point_cloud_csv(b, pts)
        assert a.read_bytes() == b.read_bytes()


class TestInstanceJson:
    def test_roundtrip_preserves_descriptor(self, tmp_path):
        d = make_descriptor(("sine", "circle"), (1.2, 1.8), eta=0.01, seed=12345)
        path = tmp_path / "inst.json"
        fileio.write_instance_json(path, d)
        back = fileio.read_instance_json(path)
        assert back == d

    def test_exact_key_set(self, tmp_path):
        d = make_descriptor(("flat", "flat"), (1.2, 1.2))
        path = tmp_path / "inst.json"
        fileio.write_instance_json(path, d)
        obj = fileio.read_json(path)
        assert tuple(obj.keys()) == fileio.INSTANCE_KEYS

    def test_missing_key_rejected(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text('{"n": 2}\n')
        with pytest.raises(ValueError, match="missing keys"):
            fileio.read_instance_json(path)
