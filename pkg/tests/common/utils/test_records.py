"""
Tests for the structured-text record utilities.
"""

from fractions import Fraction
from pathlib import Path

import numpy as np
import pandas as pd
import pytest

from common.utils.records import (
    dumps_record,
    ensure_output_dir,
    read_json,
    read_jsonl,
    write_json,
    write_jsonl,
    write_table,
)


class TestRecordUtilities:
    """Test suite for record writing and reading."""

    def test_dumps_record_sorts_keys(self):
        assert dumps_record({"b": 1, "a": 2}) == '{"a":2,"b":1}'

    def test_dumps_record_converts_numpy_and_fractions(self):
        record = {
            "count": np.int64(3),
            "rate": np.float64(0.25),
            "labels": np.array([1, 0, -1]),
            "q": Fraction(11, 40),
            "path": Path("out"),
        }
        assert dumps_record(record) == '{"count":3,"labels":[1,0,-1],"path":"out","q":"11/40","rate":0.25}'

    def test_dumps_record_rejects_unknown_objects(self):
        with pytest.raises(TypeError):
            dumps_record({"x": object()})

    def test_write_jsonl_is_line_per_record(self, tmp_path):
        path = write_jsonl(tmp_path / "nested" / "trials.jsonl", [{"trial": 0}, {"trial": 1}])
        assert path.read_bytes() == b'{"trial":0}\n{"trial":1}\n'
        assert read_jsonl(path) == [{"trial": 0}, {"trial": 1}]

    def test_write_json_is_deterministic(self, tmp_path):
        first = write_json(tmp_path / "a.json", {"z": 1, "a": [1, 2]})
        second = write_json(tmp_path / "b.json", {"a": [1, 2], "z": 1})
        assert first.read_bytes() == second.read_bytes()
        assert first.read_text().endswith("}\n")
        assert read_json(first) == {"a": [1, 2], "z": 1}

    def test_write_table(self, tmp_path):
        frame = pd.DataFrame({"trial": [0, 1], "exact_recovery": [True, False]})
        path = write_table(tmp_path / "trials.csv", frame)
        assert path.read_text().splitlines() == ["trial,exact_recovery", "0,True", "1,False"]

    def test_ensure_output_dir_rejects_empty(self):
        with pytest.raises(ValueError, match="cannot be empty"):
            ensure_output_dir("")

    def test_ensure_output_dir_creates_parents(self, tmp_path):
        directory = ensure_output_dir(tmp_path / "a" / "b")
        assert directory.is_dir()
