# Testing for example.py

import os

import pytest

from pialgkit.example import (
    ETA_TWO_ETA_READINGS,
    example_path,
    projective_plane,
    projective_plane_resolution,
    sphere,
)
from pialgkit.pialg import validate_algebra, validate_map
from pialgkit.resolution import validate_resolution


def test_example_path():
    assert os.path.exists(example_path())
    assert example_path().endswith("rp2_example.json")


def test_worked_example(example):
    assert example.algebra.summary() == {"n": "Z/2", "n+1": "Z/2", "n+2": "Z/4"}
    assert example.sphere.summary() == {"n-1": "Z", "n": "Z/2", "n+1": "Z/2", "n+2": "Z/24"}
    assert validate_algebra(example.algebra).valid
    assert validate_map(example.phi).valid
    assert validate_map(example.psi).valid
    assert validate_resolution(example.resolution).valid
    assert validate_resolution(example.sphere_resolution).valid
    assert sorted(example.brackets) == ["⟨η,2,0⟩", "⟨η,2,α⟩", "⟨η,2,η⟩"]
    assert example.readings["⟨η,2,η⟩"] == ETA_TWO_ETA_READINGS


def test_derived_objects(example):
    assert example.loop_algebra.name == "ΩΛ"
    assert example.loop_algebra.base is example.algebra
    restricted = example.restricted_loop_sphere()
    assert restricted.base is example.algebra
    assert restricted.name == "φ*ΩS"
    coefficients = example.coefficients()
    assert coefficients.over is example.phi
    assert coefficients.source.base is example.algebra
    assert coefficients.target.base is example.sphere


def test_builders_are_fresh():
    first, second = projective_plane(), projective_plane()
    assert first == second
    assert first is not second
    assert first != sphere()
    assert projective_plane_resolution(first).algebra is first


@pytest.mark.parametrize(
    "name, document_name",
    [("⟨η,2,α⟩", "eta_2_alpha"), ("⟨η,2,η⟩", "eta_2_eta"), ("⟨η,2,0⟩", "eta_2_zero")],
)
def test_document_matches_code(example, document, name, document_name):
    coset, _ = document.bracket(document_name)
    assert coset.format() == example.brackets[name].format()


def test_document_objects_match_code(example, document):
    assert document.algebra("Lambda") == example.algebra
    assert document.algebra("S") == example.sphere
    for name, phi in (("phi", example.phi), ("psi", example.psi)):
        mapped = document.map(name)
        for degree in example.algebra.degrees:
            assert mapped.component(degree) == phi.component(degree)
    assert document.resolution("X").describe() == example.resolution.describe()
