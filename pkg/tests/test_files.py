"""Tests for file helpers and hashing."""

import os
import stat

import pytest

from ccuc.utils.files import output_path, resolve_path, safe_read_file, safe_write_file
from ccuc.utils.hashing import INTEGRITY_KEY, compute_integrity_hash


class TestResolvePath:
    """Test path resolution."""

    def test_expands_home(self):
        assert resolve_path("~/x") == os.path.realpath(os.path.expanduser("~/x"))

    def test_empty_path(self):
        with pytest.raises(ValueError):
            resolve_path("")

    def test_device_paths_rejected(self):
        with pytest.raises(ValueError):
            resolve_path("/dev/null")


class TestOutputPath:
    """Test output directory placement."""

    def test_relative_name_goes_under_out_dir(self):
        assert output_path("sol.json", "results") == os.path.join("results", "sol.json")

    def test_absolute_name_wins(self):
        assert output_path("/tmp/sol.json", "results") == "/tmp/sol.json"

    def test_no_out_dir(self):
        assert output_path("sol.json", None) == "sol.json"


class TestSafeReadWrite:
    """Test atomic writes and bounded reads."""

    def test_round_trip(self, tmp_path):
        path = str(tmp_path / "out" / "file.txt")
        assert safe_write_file(path, "hello\n") is True
        assert safe_read_file(path) == "hello\n"

    def test_permissions(self, tmp_path):
        path = tmp_path / "file.txt"
        safe_write_file(str(path), "x", permissions=0o600)
        assert stat.S_IMODE(path.stat().st_mode) == 0o600

    def test_no_temporary_files_left(self, tmp_path):
        safe_write_file(str(tmp_path / "file.txt"), "x")
        assert os.listdir(tmp_path) == ["file.txt"]

    def test_read_missing(self, tmp_path):
        assert safe_read_file(str(tmp_path / "missing.txt")) is None

    def test_read_size_limit(self, tmp_path):
        path = tmp_path / "big.txt"
        path.write_text("x" * 100)
        assert safe_read_file(str(path), max_size=10) is None

    def test_write_into_device_tree_fails(self):
        assert safe_write_file("/proc/ccuc-test", "x") is False


class TestIntegrityHash:
    """Test content hashing."""

    def test_key_order_irrelevant(self):
        assert compute_integrity_hash({"a": 1, "b": 2}) == compute_integrity_hash({"b": 2, "a": 1})

    def test_embedded_hash_ignored(self):
        data = {"a": 1}
        assert compute_integrity_hash({**data, INTEGRITY_KEY: "x"}) == compute_integrity_hash(data)

    def test_content_change(self):
        assert compute_integrity_hash({"a": 1}) != compute_integrity_hash({"a": 2})
