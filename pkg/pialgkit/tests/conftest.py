# Shared fixtures: the worked example, built in code and read from the bundled document

import pytest

from pialgkit.document import InputDocument
from pialgkit.example import example_path, worked_example
from pialgkit.resolution import lift_map


@pytest.fixture(scope="module")
def example():
    return worked_example()


@pytest.fixture(scope="module")
def document():
    return InputDocument.from_file(example_path())


@pytest.fixture(scope="module")
def phi_lift(example):
    return lift_map(example.phi, example.resolution, example.sphere_resolution)


@pytest.fixture(scope="module")
def psi_lift(example):
    return lift_map(example.psi, example.resolution, example.sphere_resolution)
