import json
import math

import numpy as np
import pytest

from dnls_lab.errors import FieldFormatError
from dnls_lab.fieldio import dumps, field_from_csv, field_to_csv, read_field, write_field
from dnls_lab.grid import Field, GridSpec, Params
from dnls_lab.soliton import varphi_profile


def test_round_trip_is_bit_exact(tmp_path, rng):
    g = GridSpec(256, 12.5)
    f = Field(g, rng.standard_normal(256) + 1j * rng.standard_normal(256))
    path = tmp_path / "f.csv"
    write_field(path, f)
    h = read_field(path)
    assert h.grid == g
    assert np.array_equal(h.values, f.values)


def test_format_details(grid):
    text = field_to_csv(varphi_profile(Params(1, 1), grid))
    lines = text.split("\n")
    assert lines[0] == "x,re,im"
    assert len(lines) == grid.n_points + 2 and lines[-1] == ""
    assert "\r" not in text
    assert lines[1].startswith("-40,")


@pytest.mark.parametrize(
    "text",
    [
        "",
        "a,b,c\n-1,0,0\n0,0,0\n",
        "x,re,im\n-1,0,0\n",
        "x,re,im\n-1,0\n0,0\n",
        "x,re,im\n-1,0,zz\n0,0,0\n",
        "x,re,im\n-1,0,nan\n0,0,0\n",
        "x,re,im\n-1,0,0\n0.5,0,0\n0.6,0,0\n1.0,0,0\n",
        "x,re,im\n1,0,0\n2,0,0\n",
    ],
)
def test_malformed_input(text):
    with pytest.raises(FieldFormatError):
        field_from_csv(text)


def test_format_error_is_an_oserror():
    assert issubclass(FieldFormatError, OSError)


def test_dumps_is_deterministic_and_17_digits():
    obj = {"b": 0.1, "a": [1, float("nan"), float("inf"), True, None], "c": {"z": 1e-300}}
    s = dumps(obj)
    assert s == dumps(dict(reversed(list(obj.items()))))
    back = json.loads(s)
    assert back["a"] == [1, None, None, True, None]
    assert "0.10000000000000001" in s
    assert back["b"] == 0.1 and back["c"]["z"] == 1e-300
    assert json.loads(dumps({"pi": math.pi}, indent=None))["pi"] == math.pi
