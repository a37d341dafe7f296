# Testing for cohomology.py

import itertools

import pytest

from pialgkit.abelian import FGAbelianGroup
from pialgkit.cohomology import (
    CLASS_UNDETERMINED,
    HOST_VANISHES,
    NOT_REALIZABLE,
    REALIZABLE,
    RESOLUTION_TOO_SHORT,
    UNDECIDED,
    WINDOW_EXHAUSTED,
    ObstructionReport,
    ObstructionStage,
    arrow_cochain_complex,
    arrow_cohomology,
    assemble_les,
    cochain_complex,
    cohomology_groups,
    em_homotopy_profile,
    identity_coefficients,
    induced_coefficient_map,
    loop_module,
    obstruction_report,
)
from pialgkit.pialg import PiMap, PiModule, loop_coefficients
from pialgkit.resolution import FreeModuleMap, build_resolution, lift_map, perturb_lift
from pialgkit.toda import check_realizability
from pialgkit.utils import StructuralError

PHI_GROUPS = ["Z/2", "0", "0", "Z/2", "Z/2", "0"]
# H^1 is Z/2 here: ξ vanishes in degree 0, so its cokernel survives
PSI_GROUPS = ["(Z/2)^2", "Z/2", "0", "Z/2", "Z/2", "0"]
LOOP_GROUPS = ["Z/2", "0", "0", "Z/2", "0", "0"]


def _names(groups):
    return [str(g) for g in groups]


def _apply(columns, target, vector):
    total = [0] * target.ngens
    for x, column in zip(vector, columns):
        total = [t + int(x) * c for t, c in zip(total, column)]
    return target.reduce(total)


def _equivariant_hom_count(free_module, module):
    # brute force: every degreewise homomorphism V_d -> M_d, kept when it commutes with the stems
    stems = module.stems
    degrees = module.degrees
    choices = []
    for d in degrees:
        source, target = free_module.realize(d), module.group(d)
        columns = [[e for e in target.elements() if m == 0 or target.is_zero(target.scale(m, e))] for m in source.moduli]
        choices.append(list(itertools.product(*columns)))
    positive = [name for name in stems.names if stems.degree_of(name) > 0]

    count = 0
    for combo in itertools.product(*choices):
        maps = dict(zip(degrees, combo))
        equivariant = True
        for d, stem in itertools.product(degrees, positive):
            top = d + stems.degree_of(stem)
            if not module.in_window(top):
                continue
            action = free_module.act(d, stem)
            for j in range(action.source.ngens):
                basis = action.source.basis_vector(j)
                lhs = _apply(maps[top], module.group(top), action.matrix[:, j].tolist())
                rhs = module.act(d, stem)(_apply(maps[d], module.group(d), basis))
                if lhs != rhs:
                    equivariant = False
        count += equivariant
    return count


@pytest.fixture(scope="module")
def loop_complex(example):
    return cochain_complex(example.resolution, example.loop_algebra)


@pytest.fixture(scope="module")
def restricted_complex(example):
    return cochain_complex(example.resolution, example.restricted_loop_sphere())


def test_loop_coefficients_complex(loop_complex):
    assert _names(loop_complex.groups) == ["Z/2", "Z/2", "Z/4", "Z/4", "0", "0"]
    assert loop_complex.outgoing(0).matrix.tolist() == [[0]]
    assert loop_complex.outgoing(1).matrix.tolist() == [[2]]
    assert loop_complex.outgoing(2).matrix.tolist() == [[2]]
    assert loop_complex.outgoing(3).is_zero()
    assert _names(cohomology_groups(loop_complex)) == LOOP_GROUPS
    assert loop_complex.blocks(1)[0] == ("z", 0, 0, 1)
    assert loop_complex.describe()[2]["coboundary"] == [[2]]


def test_restricted_coefficients_complex(restricted_complex):
    assert _names(restricted_complex.groups) == ["Z/2", "Z/2", "Z/24", "Z/24", "0", "0"]
    assert restricted_complex.outgoing(1).matrix.tolist() == [[12]]
    assert restricted_complex.outgoing(2).matrix.tolist() == [[2]]
    assert _names(cohomology_groups(restricted_complex)) == LOOP_GROUPS


@pytest.mark.parametrize("level", range(6))
def test_cochains_count_module_maps(example, loop_complex, level):
    free_module = example.resolution.module(level)
    assert _equivariant_hom_count(free_module, example.loop_algebra) == loop_complex.group(level).order


def test_cohomology_of_built_resolution(example):
    # any resolution gives the same groups
    built = build_resolution(example.algebra, 5)
    complex_ = cochain_complex(built, example.loop_algebra)
    assert _names(cohomology_groups(complex_)) == LOOP_GROUPS


def test_zero_coefficients(example):
    zero = PiModule((0, 2), {}, base=example.algebra, name="0")
    complex_ = cochain_complex(example.resolution, zero)
    assert all(g.is_trivial for g in cohomology_groups(complex_))


def test_cochain_complex_errors(example):
    with pytest.raises(StructuralError):
        cochain_complex(example.resolution, example.algebra)
    with pytest.raises(StructuralError):
        cochain_complex(example.resolution, example.loop_sphere)


def test_induced_coefficient_map(example, loop_complex, restricted_complex):
    identity = induced_coefficient_map(loop_complex, loop_complex, identity_coefficients(loop_complex.module))
    assert identity.on_cohomology[3].matrix.tolist() == [[1]]
    assert not identity.is_zero()

    looped = induced_coefficient_map(loop_complex, restricted_complex, loop_coefficients(example.phi))
    assert looped.on_cohomology[0].matrix.tolist() == [[1]]
    assert looped.on_cohomology[3].is_zero()


def test_arrow_cohomology_degree_one(example, phi_lift):
    groups = arrow_cohomology(example.resolution, example.sphere_resolution, phi_lift, example.coefficients())
    assert _names(groups) == PHI_GROUPS


def test_arrow_cohomology_degree_two(example, psi_lift):
    tau = example.coefficients(example.psi)
    groups = arrow_cohomology(example.resolution, example.sphere_resolution, psi_lift, tau)
    assert _names(groups) == PSI_GROUPS
    assert str(groups[1]) == "Z/2"


def test_arrow_cohomology_identity(example, loop_complex):
    resolution = example.resolution
    identity = PiMap.identity(example.algebra)
    lift = lift_map(identity, resolution, resolution)
    groups = arrow_cohomology(resolution, resolution, lift, loop_coefficients(identity))
    assert _names(groups) == _names(cohomology_groups(loop_complex))


def test_arrow_cohomology_lift_independent(example):
    resolution = example.resolution
    identity = PiMap.identity(example.algebra)
    tau = loop_coefficients(identity)
    lift = lift_map(identity, resolution, resolution)
    h0 = FreeModuleMap.from_terms(resolution.module(0), resolution.module(1), {"x": [("z", "ι", 1)]})
    other = perturb_lift(lift, resolution, resolution, [h0])
    assert other.component(0) != lift.component(0)
    first = arrow_cohomology(resolution, resolution, lift, tau)
    second = arrow_cohomology(resolution, resolution, other, tau)
    assert _names(first) == _names(second)


@pytest.mark.parametrize("phi, groups", [("phi", PHI_GROUPS), ("psi", PSI_GROUPS)])
def test_arrow_cohomology_of_built_resolutions(example, phi, groups):
    # a different pair of resolutions and lift gives the same groups
    phi = getattr(example, phi)
    source = build_resolution(example.algebra, 5)
    target = build_resolution(example.sphere)
    lift = lift_map(phi, source, target)
    assert lift.check(phi).valid
    assert _names(arrow_cohomology(source, target, lift, example.coefficients(phi))) == groups


def test_cone_structure(example, phi_lift):
    cone = arrow_cochain_complex(example.resolution, example.sphere_resolution, phi_lift, example.coefficients())
    a, b, c = cone.parts[1]
    assert (str(a), str(b), str(c)) == ("Z/2", "0", "Z/2")
    assert cone.max_degree == 5
    assert len(cone) == 8
    assert not cone.is_trivial()


def test_arrow_errors(example, phi_lift):
    tau = example.coefficients()
    with pytest.raises(StructuralError):
        arrow_cochain_complex(example.resolution, example.resolution, phi_lift, tau)
    with pytest.raises(StructuralError):
        arrow_cochain_complex(example.resolution, example.sphere_resolution, phi_lift, PiMap.identity(tau.source))
    unrelated = PiMap(tau.source, tau.target, dict(tau.components), over=PiMap.identity(example.algebra))
    with pytest.raises(StructuralError):
        arrow_cochain_complex(example.resolution, example.sphere_resolution, phi_lift, unrelated)


@pytest.mark.parametrize("which", ["phi", "psi"])
def test_long_exact_sequence(example, phi_lift, psi_lift, which):
    phi, lift = (example.phi, phi_lift) if which == "phi" else (example.psi, psi_lift)
    cone = arrow_cochain_complex(example.resolution, example.sphere_resolution, lift, example.coefficients(phi))
    les = assemble_les(cone)
    assert les.verify().exact
    assert les.failing_degrees() == []
    assert les.terms[0][0] == "0"
    assert les.terms[-1][0] == "H^6_φ"
    report = les.to_report()
    assert report.verdicts["exact"] is True


def test_long_exact_sequence_images(example, phi_lift, psi_lift):
    cone = arrow_cochain_complex(example.resolution, example.sphere_resolution, phi_lift, example.coefficients())
    images = assemble_les(cone).images
    assert str(images[0]) == "Z/2"
    assert images[3].is_trivial

    cone = arrow_cochain_complex(
        example.resolution, example.sphere_resolution, psi_lift, example.coefficients(example.psi)
    )
    assert assemble_les(cone).images[0].is_trivial


def test_long_exact_sequence_detects_wrong_group(example, phi_lift):
    cone = arrow_cochain_complex(example.resolution, example.sphere_resolution, phi_lift, example.coefficients())
    les = assemble_les(cone)
    index = next(i for i, (label, _, _) in enumerate(les.terms) if label == "H^3_φ")
    broken = les.replace_term(index, FGAbelianGroup.trivial())
    assert not broken.verify().exact
    assert 3 in broken.failing_degrees()
    assert broken.to_report().verdicts["exact"] is False


def test_assemble_les_range(example, phi_lift):
    cone = arrow_cochain_complex(
        example.resolution, example.sphere_resolution, phi_lift, example.coefficients(), max_degree=2
    )
    assert assemble_les(cone, 1).terms[-1][0] == "H^2_φ"
    with pytest.raises(StructuralError):
        assemble_les(cone, 3)


def test_homotopy_profile(example):
    module = example.loop_algebra
    profile = em_homotopy_profile(example.algebra, module, 3)
    assert profile.layer(0) is example.algebra
    assert profile.layer(2).name == "ΩΛ"
    assert profile.layer(3) is module
    assert profile.layer(5).window == (-2, 0)
    assert profile.layer(1) is None
    assert profile.layer(4) is None
    assert len(profile.to_report().rows) == 6

    merged = em_homotopy_profile(example.algebra, module, 2)
    assert str(merged.layer(2).group(0)) == "(Z/2)^2"

    zero = PiModule((0, 2), {}, base=example.algebra)
    empty = em_homotopy_profile(example.algebra, zero, 3)
    assert empty.layer(3) is None
    assert empty.layer(5) is None

    with pytest.raises(ValueError):
        em_homotopy_profile(example.algebra, module, 0)


def test_obstruction_stages(example, phi_lift):
    report = obstruction_report(example.phi, example.resolution, example.sphere_resolution, 2, lift=phi_lift)
    assert [stage.stage for stage in report.stages] == [1, 2]
    first = report.stage(1)
    assert str(first.existence) == "Z/2"
    assert first.difference.is_trivial
    assert first.status == CLASS_UNDETERMINED
    second = report.stage(2)
    assert second.existence.is_trivial
    assert second.status == HOST_VANISHES
    assert report.verdict == UNDECIDED


def test_obstruction_with_bracket_checks(example, phi_lift):
    source = example.brackets["⟨η,2,α⟩"]
    target = example.brackets["⟨η,2,η⟩"]
    checks = check_realizability(example.phi, source, target, example.readings["⟨η,2,η⟩"])
    report = obstruction_report(
        example.phi, example.resolution, example.sphere_resolution, 1, bracket_checks=checks, lift=phi_lift
    )
    assert report.verdict == NOT_REALIZABLE
    result = report.to_report()
    assert result.verdicts["verdict"] == NOT_REALIZABLE
    assert result.rows[0]["existence"] == "Z/2"
    assert result.rows[0]["existence host"] == "H^3_φ(φ;Ω^1φ)"
    assert len(result.sections[0].rows) == 4


def test_obstruction_realizable(example):
    sphere = example.sphere_resolution
    report = obstruction_report(PiMap.identity(example.sphere), sphere, sphere, 2)
    assert all(stage.existence.is_trivial for stage in report.stages)
    assert report.verdict == REALIZABLE


@pytest.mark.parametrize("length", [1, 2])
def test_obstruction_short_resolution(example, length):
    source = build_resolution(example.algebra, length)
    target = build_resolution(example.sphere, length)
    assert not source.is_complete()
    report = obstruction_report(example.phi, source, target, 1)
    assert report.stage(1).status == RESOLUTION_TOO_SHORT
    assert report.verdict == UNDECIDED
    assert any("not built" in note for note in report.to_report().notes)


def test_obstruction_exhausted_window_is_undecided():
    zero = FGAbelianGroup.trivial()
    stage = ObstructionStage(1, zero, zero, zero, zero, zero, zero, WINDOW_EXHAUSTED)
    assert ObstructionReport("f", [stage]).verdict == UNDECIDED
    vanishing = ObstructionStage(2, zero, zero, zero, zero, zero, zero, HOST_VANISHES)
    assert ObstructionReport("f", [vanishing]).verdict == REALIZABLE
    assert ObstructionReport("f", [vanishing, stage]).verdict == UNDECIDED


def test_obstruction_no_stages(example):
    report = obstruction_report(example.phi, example.resolution, example.sphere_resolution, 0)
    assert report.stages == []
    assert report.verdict == UNDECIDED
    assert report.to_report().rows == []


def test_loop_module(example):
    module = loop_module(example.algebra, 2)
    assert module.base is example.algebra
    assert module.window == (-2, 0)
