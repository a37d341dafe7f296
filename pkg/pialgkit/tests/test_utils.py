# Testing for utils.py

import json

import numpy as np
import pytest

from pialgkit.abelian import FGAbelianGroup
from pialgkit.utils import InputError, format_degree, format_group, json_serializer, parse_degree


@pytest.mark.parametrize(
    "degree, expected",
    [
        (0, "n"),
        (1, "n+1"),
        (2, "n+2"),
        (-1, "n-1"),
        (np.int64(3), "n+3"),
    ],
)
def test_format_degree(degree, expected):
    assert format_degree(degree) == expected


@pytest.mark.parametrize(
    "value, expected",
    [
        (3, 3),
        (-2, -2),
        ("n", 0),
        ("n+2", 2),
        ("n - 1", -1),
        (" n+10 ", 10),
        ("4", 4),
        ("-3", -3),
    ],
)
def test_parse_degree(value, expected):
    assert parse_degree(value) == expected


@pytest.mark.parametrize("value", [1.5, True, "m+1", "n+x", "n*2", None, [0]])
def test_parse_degree_errors(value):
    with pytest.raises(InputError):
        parse_degree(value)


def test_degree_round_trip():
    for degree in range(-4, 5):
        assert parse_degree(format_degree(degree)) == degree


@pytest.mark.parametrize(
    "rank, torsion, expected",
    [
        (0, [], "0"),
        (1, [], "Z"),
        (3, [], "Z^3"),
        (0, [2], "Z/2"),
        (0, [2, 2], "(Z/2)^2"),
        (0, [2, 4], "Z/2 + Z/4"),
        (2, [2], "Z^2 + Z/2"),
        (1, [2, 2, 24], "Z + (Z/2)^2 + Z/24"),
    ],
)
def test_format_group(rank, torsion, expected):
    assert format_group(rank, torsion) == expected


def test_json_serializer():
    data = {
        "int": np.int64(3),
        "array": np.array([[1, 2]], dtype=object),
        "set": {3, 1},
        "group": FGAbelianGroup([0, 2]),
    }
    decoded = json.loads(json.dumps(data, default=json_serializer))
    assert decoded["int"] == 3
    assert decoded["array"] == [[1, 2]]
    assert decoded["set"] == [1, 3]
    assert decoded["group"] == {"rank": 1, "torsion": [2], "name": "Z + Z/2"}


def test_input_error_location():
    error = InputError("bad token", line=3, column=7)
    assert str(error) == "bad token (line 3, column 7)"
    assert error.line == 3
    assert error.column == 7

    error = InputError("no location")
    assert str(error) == "no location"
    assert error.line is None
