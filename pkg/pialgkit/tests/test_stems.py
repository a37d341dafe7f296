# Testing for stems.py

import pytest

from pialgkit.stems import StemElement, StemTable, compose, stem_group
from pialgkit.utils import InputError, WindowError


@pytest.fixture(scope="module")
def stems():
    return StemTable.default()


@pytest.mark.parametrize(
    "degree, expected",
    [(0, "Z"), (1, "Z/2"), (2, "Z/2"), (3, "Z/24"), (4, "0"), (5, "0")],
)
def test_stem_groups(degree, expected):
    assert str(stem_group(degree)) == expected


@pytest.mark.parametrize("degree", [-1, 6])
def test_stem_group_window(degree):
    with pytest.raises(WindowError):
        stem_group(degree)


@pytest.mark.parametrize(
    "left, right, expected",
    [
        ("η", "η", StemElement(2, (1,))),
        ("η", "η²", StemElement(3, (12,))),
        ("η²", "η", StemElement(3, (12,))),
        ("ι", "ν", StemElement(3, (1,))),
        ("ν", "ι", StemElement(3, (1,))),
        ("η", "ν", StemElement(4, ())),
        ("ν", "ν", StemElement(6, ())),
    ],
)
def test_compose_generators(stems, left, right, expected):
    assert stems.compose(stems.element(left), stems.element(right)) == expected


def test_compose_bilinear(stems):
    two = stems.element("ι", 2)
    eta = stems.element("η")
    assert compose(two, eta).is_zero()
    assert compose(eta, two).is_zero()
    assert stems.compose(stems.element("ν", 2), stems.element("ι", 3)) == StemElement(3, (6,))
    assert stems.compose(stems.element("η"), stems.element("η²")).coordinate == 12


def test_names_and_orders(stems):
    assert stems.unit == "ι"
    assert stems.names == ["ι", "η", "η²", "ν"]
    assert stems.degree_of("ν") == 3
    assert stems.order_of("ν") == 24
    assert stems.order_of("ι") == 0
    with pytest.raises(KeyError):
        stems.degree_of("κ")
    with pytest.raises(KeyError):
        stems.element("κ")


def test_factorization(stems):
    assert stems.factorization("η²") == ("η", "η")
    assert stems.factorization("η") is None
    assert stems.indecomposables() == ["η", "ν"]


def test_parse_and_format(stems):
    assert stems.parse("η") == StemElement(1, (1,))
    assert stems.parse({"stem": "ι", "multiple": 2}) == StemElement(0, (2,))
    assert stems.parse({"stem": "ν", "multiple": 25}) == StemElement(3, (1,))
    assert stems.format(stems.element("ν", 6)) == "6ν"
    assert stems.prefixed("x", "ι") == "x"
    assert stems.prefixed("x", "η") == "x∘η"
    assert stems.prefixed("ι", "η") == "η"
    with pytest.raises(InputError):
        stems.parse(3)


def test_default_table_is_valid(stems):
    report = stems.validate()
    assert report.valid
    assert report.checks > 0


def test_table_failing_bilinearity():
    records = [
        {"degree": 0, "invariant_factors": [0], "generators": ["ι"]},
        {"degree": 1, "invariant_factors": [2], "generators": ["η"]},
        {"degree": 2, "invariant_factors": [4], "generators": ["η²"]},
    ]
    products = [{"left": "η", "right": "η", "result": "η²"}]
    report = StemTable(records, products).validate()
    assert not report.valid
    assert "bilinearity" in report.kinds()


@pytest.mark.parametrize(
    "records, products",
    [
        # mismatched names and factors
        ([{"degree": 0, "invariant_factors": [0], "generators": []}], []),
        # degree 0 must be Z
        ([{"degree": 0, "invariant_factors": [2], "generators": ["ι"]}], []),
        # product that does not add degrees
        (
            [
                {"degree": 0, "invariant_factors": [0], "generators": ["ι"]},
                {"degree": 1, "invariant_factors": [2], "generators": ["η"]},
                {"degree": 3, "invariant_factors": [24], "generators": ["ν"]},
            ],
            [{"left": "η", "right": "η", "result": "ν"}],
        ),
        # unknown generator in a product
        ([{"degree": 0, "invariant_factors": [0], "generators": ["ι"]}], [{"left": "ι", "right": "κ", "result": "ι"}]),
        # degree outside the window
        (
            [
                {"degree": 0, "invariant_factors": [0], "generators": ["ι"]},
                {"degree": 7, "invariant_factors": [2], "generators": ["σ"]},
            ],
            [],
        ),
    ],
)
def test_bad_tables(records, products):
    with pytest.raises(InputError):
        StemTable(records, products)
