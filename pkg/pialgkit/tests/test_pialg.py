# Testing for pialg.py

import pytest

from pialgkit.abelian import FGAbelianGroup
from pialgkit.pialg import (
    PiMap,
    PiModule,
    StablePiAlgebra,
    as_module,
    coefficient_map,
    direct_sum,
    free_algebra,
    loop,
    loop_coefficients,
    restrict_scalars,
    validate_algebra,
    validate_map,
)
from pialgkit.utils import StructuralError, ValidationError


def test_projective_plane(example):
    algebra = example.algebra
    assert algebra.summary() == {"n": "Z/2", "n+1": "Z/2", "n+2": "Z/4"}
    assert algebra.act(0, "η").matrix.tolist() == [[1]]
    # α∘η² = (αη)∘η = 2β through the factorization of η²
    assert algebra.act(0, "η²").matrix.tolist() == [[2]]
    assert algebra.act(0, "ν").is_zero()
    assert algebra.group(5).is_trivial
    assert validate_algebra(algebra).valid


def test_sphere(example):
    sphere = example.sphere
    assert sphere.window == (-1, 2)
    assert sphere.summary() == {"n-1": "Z", "n": "Z/2", "n+1": "Z/2", "n+2": "Z/24"}
    assert sphere.group(-1).labels == ("ι",)
    assert sphere.group(0).labels == ("η",)
    assert sphere.group(2).labels == ("ν",)
    assert sphere.act(0, "η").matrix.tolist() == [[1]]
    assert sphere.act(1, "η").matrix.tolist() == [[12]]
    assert sphere.act(-1, "ν").matrix.tolist() == [[1]]
    assert validate_algebra(sphere).valid


def test_free_algebra_default_window():
    algebra = free_algebra(0, generator="a")
    assert algebra.window == (0, 5)
    assert algebra.group(1).labels == ("a∘η",)
    assert algebra.group(4).is_trivial
    assert validate_algebra(algebra).valid


def test_bad_action():
    groups = {0: FGAbelianGroup([2]), 1: FGAbelianGroup([2]), 2: FGAbelianGroup([4])}
    # (αη)∘η = β is not killed by 2
    algebra = StablePiAlgebra((0, 2), groups, {(0, "η"): [[1]], (1, "η"): [[1]]})
    report = validate_algebra(algebra)
    assert not report.valid
    assert "bilinearity" in report.kinds()
    violation = next(v for v in report.violations if v.kind == "bilinearity")
    assert violation.degree == 1
    assert violation.witness


def test_bad_associativity():
    # η² stored explicitly, disagreeing with η acting twice
    groups = {0: FGAbelianGroup([2]), 1: FGAbelianGroup([2]), 2: FGAbelianGroup([2])}
    algebra = StablePiAlgebra((0, 2), groups, {(0, "η"): [[1]], (1, "η"): [[1]], (0, "η²"): [[0]]})
    assert "associativity" in validate_algebra(algebra).kinds()


def test_action_wrong_shape():
    groups = {0: FGAbelianGroup([2]), 1: FGAbelianGroup([2])}
    with pytest.raises(ValueError):
        StablePiAlgebra((0, 1), groups, {(0, "η"): [[1, 0]]})
    with pytest.raises(StructuralError):
        StablePiAlgebra((2, 1), {})
    with pytest.raises(StructuralError):
        StablePiAlgebra((0, 1), {3: FGAbelianGroup([2])})


def test_loop(example):
    looped = loop(example.algebra)
    assert looped.window == (-1, 1)
    assert looped.name == "ΩΛ"
    assert str(looped.group(-1)) == "Z/2"
    assert looped.act(0, "η").matrix.tolist() == [[2]]
    assert loop(example.algebra, 2).name == "Ω^2Λ"
    assert loop(example.algebra, 0) is example.algebra
    with pytest.raises(ValueError):
        loop(example.algebra, -1)


def test_maps(example):
    assert validate_map(example.phi).valid
    assert validate_map(example.psi).valid
    assert example.phi(2, (3,)) == (18,)
    assert example.psi(2, (1,)) == (12,)


@pytest.mark.parametrize(
    "components, kind",
    [
        # β ↦ ν is not killed by 4
        ({0: [[1]], 1: [[1]], 2: [[1]]}, "torsion"),
        # (αη)∘η = 2β ↦ 12ν but φ(αη)∘η = 0
        ({0: [[0]], 1: [[0]], 2: [[6]]}, "equivariance"),
    ],
)
def test_bad_maps(example, components, kind):
    phi = PiMap(example.algebra, example.sphere, components, name="bad")
    report = validate_map(phi)
    assert kind in report.kinds()


def test_degree_one_candidates(example):
    # β ↦ kν for every k; only 6ν and 18ν respect 4β = 0 and 2β = α∘η²
    components = {0: [[1]], 1: [[1]]}
    valid = {
        k
        for k in range(24)
        if validate_map(PiMap(example.algebra, example.sphere, {**components, 2: [[k]]}, name=f"φ_{k}")).valid
    }
    assert valid == {6, 18}


@pytest.mark.parametrize(
    "entry, value, algebra_valid",
    [
        ((0, "η"), 0, True),
        ((1, "η"), 0, True),
        ((1, "η"), 1, False),
        ((1, "η"), 3, False),
    ],
)
def test_mutated_action(example, entry, value, algebra_valid):
    action = {(0, "η"): [[1]], (1, "η"): [[2]], entry: [[value]]}
    groups = {d: example.algebra.group(d) for d in example.algebra.degrees}
    mutated = StablePiAlgebra((0, 2), groups, action, stems=example.stems, name="Λ'")
    assert mutated != example.algebra
    assert validate_algebra(mutated).valid == algebra_valid
    if algebra_valid:
        # still an algebra, but φ no longer commutes with η on it
        phi = PiMap(mutated, example.sphere, {0: [[1]], 1: [[1]], 2: [[6]]}, name="φ")
        assert "equivariance" in validate_map(phi).kinds()


def test_identity_and_zero(example):
    identity = PiMap.identity(example.algebra)
    assert identity.name == "id"
    assert validate_map(identity).valid
    assert PiMap.zero(example.algebra, example.sphere)(2, (1,)) == (0,)


def test_modules(example):
    module = example.loop_algebra
    assert isinstance(module, PiModule)
    assert module.base is example.algebra
    with pytest.raises(StructuralError):
        PiModule((0, 1), {})

    restricted = example.restricted_loop_sphere()
    assert restricted.base is example.algebra
    assert str(restricted.group(1)) == "Z/24"
    assert restricted.name == "φ*ΩS"
    with pytest.raises(StructuralError):
        restrict_scalars(module, example.phi)


def test_loop_coefficients(example):
    tau = loop_coefficients(example.phi)
    assert tau.over is example.phi
    assert tau.source.base is example.algebra
    assert tau.target.base is example.sphere
    assert tau(1, (1,)) == (6,)
    checked = coefficient_map(tau)
    assert checked is not tau
    assert checked.over is example.phi
    assert checked.components == tau.components


def test_coefficient_map_leaves_input(example):
    tau = loop_coefficients(example.phi)
    plain = PiMap(tau.source, tau.target, dict(tau.components), name="Ωφ")
    checked = coefficient_map(plain, over=example.phi)
    assert checked.over is example.phi
    assert plain.over is None
    assert checked.name == "Ωφ"


def test_coefficient_map_rejects(example):
    tau = loop_coefficients(example.phi)
    bad = PiMap(tau.source, tau.target, {1: [[1]]}, over=example.phi, name="bad")
    with pytest.raises(ValidationError) as error:
        coefficient_map(bad)
    assert not error.value.report.valid

    wrong_base = PiMap(tau.source, tau.target, dict(tau.components), name="wrong")
    with pytest.raises(StructuralError):
        coefficient_map(wrong_base, over=PiMap.identity(example.algebra))


def test_direct_sum(example):
    module = example.loop_algebra
    summed = direct_sum(module, module)
    assert isinstance(summed, PiModule)
    assert str(summed.group(0)) == "(Z/2)^2"
    assert summed.act(0, "η").matrix.tolist() == [[2, 0], [0, 2]]
    assert validate_algebra(summed).valid

    algebra = direct_sum(example.algebra, example.algebra, name="Λ×Λ")
    assert not isinstance(algebra, PiModule)
    assert algebra.name == "Λ×Λ"


def test_as_module_equality(example):
    module = as_module(example.algebra)
    assert module.base is example.algebra
    assert module == example.algebra
