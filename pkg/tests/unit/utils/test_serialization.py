"""Unit tests for canonical text forms."""

import math
from fractions import Fraction
from pathlib import Path

import mpmath
import numpy as np
import pytest

from divgaps.utils.serialization import (
    dumps_json,
    format_float,
    format_ratio,
    loads_json,
    parse_ratio,
    ratio_to_float,
    render_csv,
    write_csv,
    write_json,
)

pytestmark = pytest.mark.unit


class TestRatios:
    def test_format(self):
        assert format_ratio(Fraction(6, 8)) == "3/4"
        assert format_ratio(Fraction(-2, 3)) == "-2/3"
        assert format_ratio(Fraction(5)) == "5/1"

    def test_parse(self):
        assert parse_ratio("3/4") == Fraction(3, 4)
        assert parse_ratio("7") == Fraction(7)
        assert parse_ratio("4/8") == Fraction(1, 2)

    def test_huge_parts_to_float(self):
        value = Fraction(10**400 + 1, 3 * 10**400)
        assert ratio_to_float(value) == pytest.approx(1.0 / 3.0)


class TestFloats:
    @pytest.mark.parametrize(
        ("value", "expected"),
        [(0.1, "0.10000000000000001"), (2.0, "2"), (math.nan, "nan"), (-math.inf, "-inf")],
    )
    def test_format(self, value, expected):
        assert format_float(value) == expected

    def test_round_trip(self):
        value = 2.280291016514
        assert float(format_float(value)) == value


class TestJson:
    """Test deterministic JSON bytes."""

    def test_sorted_and_indented(self):
        assert dumps_json({"b": 1, "a": [1, 2]}) == b'{\n  "a": [\n    1,\n    2\n  ],\n  "b": 1\n}\n'

    def test_fractions_and_paths(self):
        payload = loads_json(dumps_json({"r": Fraction(1, 3), "p": Path("out/x.csv")}))
        assert payload == {"r": "1/3", "p": "out/x.csv"}

    def test_numpy_arrays(self):
        assert loads_json(dumps_json({"v": np.array([1.5, 2.0])})) == {"v": [1.5, 2.0]}

    def test_strided_and_object_arrays(self):
        """Test arrays orjson cannot take natively go through the fallback."""
        strided = np.arange(6, dtype=np.float64)[::2]
        mixed = np.array([Fraction(1, 2), 3], dtype=object)
        payload = loads_json(dumps_json({"s": strided, "o": mixed}))
        assert payload == {"s": [0.0, 2.0, 4.0], "o": ["1/2", 3]}

    def test_numpy_scalars(self):
        payload = loads_json(dumps_json({"i": np.int32(7), "b": np.bool_(True)}))
        assert payload == {"i": 7, "b": True}

    def test_mpmath_values(self):
        assert loads_json(dumps_json({"c": mpmath.mpf("2.5")})) == {"c": 2.5}

    def test_unsupported_type(self):
        with pytest.raises(TypeError):
            dumps_json({"s": {1, 2}})

    def test_write_creates_parents(self, tmp_path):
        path = tmp_path / "nested" / "report.json"
        write_json(path, {"ok": True})
        assert loads_json(path.read_bytes()) == {"ok": True}


class TestCsv:
    def test_cells(self):
        text = render_csv(["n", "f", "g", "flag", "missing"], [[3, Fraction(3, 4), 0.5, True, None]])
        assert text == "n,f,g,flag,missing\n3,3/4,0.5,true,\n"

    def test_numpy_and_mpmath_cells(self):
        text = render_csv(
            ["n", "x", "y", "flag"],
            [[np.int64(4), np.float64(0.1), mpmath.mpf("0.25"), np.bool_(False)]],
        )
        assert text == "n,x,y,flag\n4,0.10000000000000001,0.25,false\n"

    def test_write(self, tmp_path):
        path = tmp_path / "tables" / "f.csv"
        write_csv(path, ["n", "value"], [[0, 1.0], [1, 0.25]])
        assert path.read_text() == "n,value\n0,1\n1,0.25\n"
