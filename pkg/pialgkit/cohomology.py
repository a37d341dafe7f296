"""
Cohomology of resolved algebras with module coefficients, cohomology of a map through a mapping cone, the long
exact sequence of a map, and obstruction group reports
"""

__all__ = [
    "CochainComplex",
    "cochain_complex",
    "cohomology_groups",
    "CoefficientMapData",
    "induced_coefficient_map",
    "ArrowCochainComplex",
    "arrow_cochain_complex",
    "arrow_cohomology",
    "LongExactSequence",
    "assemble_les",
    "HomotopyProfile",
    "em_homotopy_profile",
    "ObstructionStage",
    "ObstructionReport",
    "obstruction_report",
    "identity_coefficients",
    "loop_module",
]

from dataclasses import dataclass, field

from tqdm import tqdm

from . import logger
from .abelian import (
    AbHom,
    ChainComplexAb,
    FGAbelianGroup,
    block_matrix,
    identity,
    image,
    induced_map_on_homology,
    verify_exact,
    zeros,
)
from .pialg import PiMap, PiModule, as_module, direct_sum, loop, loop_coefficients, restrict_scalars
from .reports import Report, group_row
from .resolution import lift_map
from .utils import StructuralError


# -------------------------------------------------------------------------------------------------------------------
# Hom cochain complexes
def _hom_blocks(module, free_module):
    # (generator, degree, first coordinate, size) of Hom(free_module, module) = ⊕_g M_{|g|}
    blocks, start = [], 0
    for name, degree in free_module:
        size = module.group(degree).ngens
        blocks.append((name, degree, start, size))
        start += size
    return blocks


def _hom_group(module, free_module):
    moduli, labels = [], []
    for name, degree in free_module:
        group = module.group(degree)
        moduli.extend(group.moduli)
        labels.extend(f"{name}↦{label}" for label in group.labels)
    return FGAbelianGroup(moduli, labels=labels)


def _pullback(module_map, module, source_group, target_group):
    """
    Precomposition ``f ↦ f∘F`` from ``Hom(B, M)`` to ``Hom(A, M)`` for a free module map ``F: A -> B``

    For a generator a with ``F(a) = Σ b∘σ_b`` the new value is ``f(a) = Σ f(b)∘σ_b``, using the action on M.
    """
    source_blocks = _hom_blocks(module, module_map.target)
    target_blocks = _hom_blocks(module, module_map.source)
    matrix = zeros(target_group.ngens, source_group.ngens)
    for a_name, a_degree, row, rows in target_blocks:
        if not rows:
            continue
        components = module_map.target.split(a_degree, module_map.image(a_name))
        for b_name, b_degree, col, cols in source_blocks:
            sigma = components.get(b_name)
            if not cols or sigma is None or sigma.is_zero():
                continue
            matrix[row : row + rows, col : col + cols] = module.act_element(b_degree, sigma).matrix
    return AbHom(source_group, target_group, matrix)


def _postcompose(tau, free_module, source_group, target_group):
    # f ↦ τ∘f, block diagonal over the generators
    source_blocks = _hom_blocks(tau.source, free_module)
    target_blocks = _hom_blocks(tau.target, free_module)
    matrix = zeros(target_group.ngens, source_group.ngens)
    for (_, degree, col, cols), (_, _, row, rows) in zip(source_blocks, target_blocks):
        if cols and rows:
            matrix[row : row + rows, col : col + cols] = tau.component(degree).matrix
    return AbHom(source_group, target_group, matrix)


class CochainComplex(ChainComplexAb):
    """
    ``Hom(V_•, M)`` for a free resolution ``V_•`` and a module M over the resolved algebra.

    Level n is ``⊕_{g ∈ V_n} M_{|g|}`` with coordinates labelled ``g↦m``; the coboundary sends f to ``f∘∂``.
    """

    def __init__(self, resolution, module):
        self.resolution = resolution
        self.module = module
        groups = [_hom_group(module, resolution.module(n)) for n in range(resolution.length + 1)]
        coboundaries = {
            n: _pullback(resolution.differential(n + 1), module, groups[n], groups[n + 1])
            for n in range(resolution.length)
        }
        super().__init__(groups, coboundaries, cohomological=True)

    def blocks(self, level):
        """(generator, degree, first coordinate, size) for each generator of level ``level``"""
        return _hom_blocks(self.module, self.resolution.module(level))

    def cohomology(self, degree):
        return self.homology(degree)

    def describe(self):
        """One row per level with the group and the coboundary matrix leaving it"""
        return [
            group_row(n, self.group(n), coboundary=self.outgoing(n).matrix.tolist())
            for n in range(len(self.groups))
        ]


def cochain_complex(resolution, module):
    """
    Cochain complex ``Hom(V_•, M)`` computing cohomology with coefficients in M

    Parameters
    ----------
    resolution : FreeResolution
        Resolution of an algebra Λ
    module : PiModule
        Module over Λ (use :func:`restrict_scalars` for a module over another algebra)

    Returns
    -------
    CochainComplex

    Raises
    ------
    StructuralError
        If the module is not over the resolved algebra
    """
    if not isinstance(module, PiModule):
        raise StructuralError(f"{module.name or 'Coefficients'} is not a module; wrap it with as_module first")
    if module.base != resolution.algebra:
        raise StructuralError(
            f"Module {module.name} is over {module.base.name}, but the resolution resolves {resolution.algebra.name}"
        )
    if module.stems.to_dict() != resolution.stems.to_dict():
        raise StructuralError("Module and resolution use different stem tables")
    return CochainComplex(resolution, module)


def cohomology_groups(complex_, max_degree=None):
    """
    Cohomology groups ``H^0 .. H^max_degree``

    Parameters
    ----------
    complex_ : ChainComplexAb
        Cochain complex
    max_degree : int
        Top degree. Default: the top level of the complex

    Returns
    -------
    list of FGAbelianGroup
    """
    if max_degree is None:
        max_degree = len(complex_) - 1
    return [complex_.homology(n) for n in range(max_degree + 1)]


@dataclass(eq=False)
class CoefficientMapData:
    """Cochain map induced by a coefficient map, with its effect on cohomology in each degree"""

    cochain_maps: list
    on_cohomology: list

    def is_zero(self):
        return all(m.is_zero() for m in self.on_cohomology)


def induced_coefficient_map(source_complex, target_complex, tau, max_degree=None):
    """
    Postcomposition with a coefficient map ``τ: M_0 -> M_1`` and the maps it induces on cohomology

    Parameters
    ----------
    source_complex, target_complex : CochainComplex
        ``Hom(V_•, M_0)`` and ``Hom(V_•, M_1)`` over one resolution
    tau : PiMap
    max_degree : int
        Default: the top level of the complexes

    Returns
    -------
    CoefficientMapData
    """
    if source_complex.resolution is not target_complex.resolution:
        raise StructuralError("Coefficient maps act between cochain complexes of one resolution")
    if max_degree is None:
        max_degree = len(source_complex) - 1
    cochain_maps, on_cohomology = [], []
    for n in range(max_degree + 1):
        free_module = source_complex.resolution.module(n)
        cochain = _postcompose(tau, free_module, source_complex.group(n), target_complex.group(n))
        cochain_maps.append(cochain)
        on_cohomology.append(
            induced_map_on_homology(cochain, source_complex.homology_data(n), target_complex.homology_data(n))
        )
    return CoefficientMapData(cochain_maps, on_cohomology)


# -------------------------------------------------------------------------------------------------------------------
# Cohomology of a map
class ArrowCochainComplex(ChainComplexAb):
    """
    Mapping cone computing the cohomology of a map of resolved algebras with coefficients in ``τ: M_0 -> M_1``.

    In degree n the group is ``C^n(X;M_0) ⊕ C^n(Y;M_1) ⊕ C^{n-1}(X;M_1)`` and the coboundary is
    ``(a, b, c) ↦ (δa, δb, τ_*a - Φ^*b - δc)``, so that the cohomology sits in a long exact sequence with
    ``ξ = τ_* - Φ^*``.
    """

    def __init__(self, lift, tau, max_degree=None):
        """
        Parameters
        ----------
        lift : ResolutionMap
            Chain map ``Φ: X -> Y`` lifting the algebra map under ``tau``
        tau : PiMap
            Coefficient map from a module over the source algebra to one over the target algebra
        max_degree : int
            Highest degree whose cohomology is needed. Default: the length of the source resolution
        """
        self.lift = lift
        self.tau = tau
        source, target = lift.source, lift.target
        if max_degree is None:
            max_degree = source.length

        self.source_complex = cochain_complex(source, tau.source)
        self.target_complex = cochain_complex(target, tau.target)
        self.mixed_complex = cochain_complex(source, restrict_scalars(tau.target, tau.over))

        top = max_degree + 2
        self.postcomposition = [
            _postcompose(tau, source.module(n), self.source_complex.group(n), self.mixed_complex.group(n))
            for n in range(top + 1)
        ]
        self.pullback = [
            _pullback(lift.component(n), self.mixed_complex.module, self.target_complex.group(n), self.mixed_complex.group(n))
            for n in range(top + 1)
        ]

        self.parts = []
        groups = []
        for n in range(top + 1):
            parts = (self.source_complex.group(n), self.target_complex.group(n), self.mixed_complex.group(n - 1))
            self.parts.append(parts)
            groups.append(FGAbelianGroup.direct_sum(*parts))

        coboundaries = {}
        for n in range(top):
            a, b, c = self.parts[n]
            a1, b1, c1 = self.parts[n + 1]
            blocks = [
                [self.source_complex.outgoing(n).matrix, None, None],
                [None, self.target_complex.outgoing(n).matrix, None],
                [self.postcomposition[n].matrix, -self.pullback[n].matrix, -self.mixed_complex.outgoing(n - 1).matrix],
            ]
            matrix = block_matrix(blocks, [a1.ngens, b1.ngens, c1.ngens], [a.ngens, b.ngens, c.ngens])
            coboundaries[n] = AbHom(groups[n], groups[n + 1], matrix)
        self.max_degree = max_degree
        super().__init__(groups, coboundaries, cohomological=True)

    def is_trivial(self):
        return all(g.ngens == 0 for g in self.groups)

    def cohomology(self, degree):
        return self.homology(degree)

    # Maps of the long exact sequence, on cochains
    def projections(self, degree):
        """``(a, b, c) ↦ a`` and ``(a, b, c) ↦ b``"""
        a, b, c = self.parts[degree]
        sizes = [a.ngens, b.ngens, c.ngens]
        first = block_matrix([[identity(a.ngens), None, None]], [a.ngens], sizes)
        second = block_matrix([[None, identity(b.ngens), None]], [b.ngens], sizes)
        return AbHom(self.group(degree), a, first, check=False), AbHom(self.group(degree), b, second, check=False)

    def inclusion(self, degree):
        """``c ↦ (0, 0, c)`` from ``C^degree(X;M_1)`` into the cone in degree ``degree + 1``"""
        a, b, c = self.parts[degree + 1]
        matrix = block_matrix([[None], [None], [identity(c.ngens)]], [a.ngens, b.ngens, c.ngens], [c.ngens])
        return AbHom(c, self.group(degree + 1), matrix, check=False)


def arrow_cochain_complex(source_resolution, target_resolution, lift, tau, max_degree=None):
    """
    Mapping cone model for the cohomology of a map

    Parameters
    ----------
    source_resolution, target_resolution : FreeResolution
        Resolutions X of Λ and Y of Γ
    lift : ResolutionMap
        Lift ``Φ: X -> Y`` of the algebra map ``tau.over``
    tau : PiMap
        Coefficient map ``M_0 -> M_1`` over ``φ: Λ -> Γ``, with M_0 over Λ and M_1 over Γ
    max_degree : int

    Returns
    -------
    ArrowCochainComplex

    Raises
    ------
    StructuralError
        If the lift, the resolutions and the coefficient map do not fit together
    """
    phi = tau.over
    if phi is None:
        raise StructuralError(f"Coefficient map {tau.name} does not record the algebra map it lies over")
    if lift.source is not source_resolution or lift.target is not target_resolution:
        raise StructuralError("The lift does not go between the given resolutions")
    if phi.source != source_resolution.algebra or phi.target != target_resolution.algebra:
        raise StructuralError(f"{phi.name or 'The algebra map'} does not go between the resolved algebras")
    for module, algebra in ((tau.source, phi.source), (tau.target, phi.target)):
        if not isinstance(module, PiModule) or module.base != algebra:
            raise StructuralError(f"Coefficients {module.name} are not a module over {algebra.name}")
    return ArrowCochainComplex(lift, tau, max_degree=max_degree)


def arrow_cohomology(source_resolution, target_resolution, lift, tau, max_degree=None):
    """
    Cohomology ``H^0_φ .. H^max_degree_φ`` of a map with coefficients in ``τ``

    See :func:`arrow_cochain_complex` for the parameters.

    Returns
    -------
    list of FGAbelianGroup
    """
    cone = arrow_cochain_complex(source_resolution, target_resolution, lift, tau, max_degree=max_degree)
    return cohomology_groups(cone, cone.max_degree)


# -------------------------------------------------------------------------------------------------------------------
# Long exact sequence
@dataclass(eq=False)
class LongExactSequence:
    """
    Terms and maps of a long exact sequence, in order

    ``terms[i]`` is a ``(label, degree, group)`` triple and ``maps[i]`` goes from ``terms[i]`` to ``terms[i + 1]``.
    """

    terms: list
    maps: list
    images: dict = field(default_factory=dict)

    def __post_init__(self):
        if len(self.maps) != len(self.terms) - 1:
            raise StructuralError(f"{len(self.terms)} terms need {len(self.terms) - 1} maps")

    def verify(self):
        """Exactness at every inner term (see :func:`verify_exact`)"""
        return verify_exact(self.maps, labels=[label for label, _, _ in self.terms[1:-1]])

    def failing_degrees(self):
        report = self.verify()
        return sorted({self.terms[j.index + 1][1] for j in report.failures})

    def replace_term(self, index, group):
        """
        Copy with one term replaced and the maps at that term set to zero

        Used to check that exactness detects a wrong group.
        """
        terms = list(self.terms)
        label, degree, _ = terms[index]
        terms[index] = (label, degree, group)
        maps = list(self.maps)
        if index > 0:
            maps[index - 1] = AbHom.zero(terms[index - 1][2], group)
        if index < len(maps):
            maps[index] = AbHom.zero(group, terms[index + 1][2])
        return LongExactSequence(terms, maps, dict(self.images))

    def to_report(self, title="Long exact sequence"):
        verdict = self.verify()
        exact_at = {j.index + 1: j for j in verdict.junctions}
        report = Report("les", title=title, columns=["position", "term", "degree", "group", "exact"])
        for i, (label, degree, group) in enumerate(self.terms):
            junction = exact_at.get(i)
            report.add_row(
                {
                    "position": i,
                    "term": label,
                    "degree": degree,
                    "group": str(group),
                    "exact": "" if junction is None else ("yes" if junction.exact else f"no: {junction.witness_text}"),
                }
            )
        for degree, group in sorted(self.images.items()):
            report.notes.append(f"image of ξ in degree {degree}: {group}")
        report.verdicts["exact"] = verdict.exact
        return report


def assemble_les(cone, max_degree=None):
    """
    Long exact sequence of a map with coefficients

    ``0 -> H^0_φ -> H^0(X;M_0) ⊕ H^0(Y;M_1) -> H^0(X;M_1) -> H^1_φ -> ...``, ending at ``H^{max_degree+1}_φ``.
    The maps are the projection, ``ξ = τ_* - Φ^*`` and the connecting map ``[c] ↦ [(0, 0, c)]``.

    Parameters
    ----------
    cone : ArrowCochainComplex
    max_degree : int
        Default: the degree the cone was built for

    Returns
    -------
    LongExactSequence
    """
    if max_degree is None:
        max_degree = cone.max_degree
    if max_degree > cone.max_degree:
        raise StructuralError(f"The cone was built up to degree {cone.max_degree}")

    cone_data = [cone.homology_data(n) for n in range(max_degree + 2)]
    source_data = [cone.source_complex.homology_data(n) for n in range(max_degree + 1)]
    target_data = [cone.target_complex.homology_data(n) for n in range(max_degree + 1)]
    mixed_data = [cone.mixed_complex.homology_data(n) for n in range(max_degree + 1)]

    terms = [("0", -1, FGAbelianGroup.trivial())]
    maps = []
    images = {}
    connecting = None
    for n in range(max_degree + 1):
        source_h, target_h, mixed_h = source_data[n].group, target_data[n].group, mixed_data[n].group
        middle = FGAbelianGroup.direct_sum(source_h, target_h)
        terms.append((f"H^{n}_φ", n, cone_data[n].group))
        maps.append(connecting if connecting is not None else AbHom.zero(terms[0][2], cone_data[n].group))

        first, second = cone.projections(n)
        p_first = induced_map_on_homology(first, cone_data[n], source_data[n])
        p_second = induced_map_on_homology(second, cone_data[n], target_data[n])
        projection = AbHom(
            cone_data[n].group,
            middle,
            block_matrix([[p_first.matrix], [p_second.matrix]], [source_h.ngens, target_h.ngens], [cone_data[n].group.ngens]),
        )
        terms.append((f"H^{n}(X;M0) ⊕ H^{n}(Y;M1)", n, middle))
        maps.append(projection)

        postcomposition = induced_map_on_homology(cone.postcomposition[n], source_data[n], mixed_data[n])
        pullback = induced_map_on_homology(cone.pullback[n], target_data[n], mixed_data[n])
        xi = AbHom(
            middle,
            mixed_h,
            block_matrix([[postcomposition.matrix, -pullback.matrix]], [mixed_h.ngens], [source_h.ngens, target_h.ngens]),
        )
        terms.append((f"H^{n}(X;M1)", n, mixed_h))
        maps.append(xi)
        images[n] = image(xi)[0]

        connecting = induced_map_on_homology(cone.inclusion(n), mixed_data[n], cone_data[n + 1])

    terms.append((f"H^{max_degree + 1}_φ", max_degree + 1, cone_data[max_degree + 1].group))
    maps.append(connecting)
    return LongExactSequence(terms, maps, images)


# -------------------------------------------------------------------------------------------------------------------
# Eilenberg-Mac Lane objects
@dataclass(eq=False)
class HomotopyProfile:
    """Homotopy of the Eilenberg-Mac Lane object ``E_Λ(M, n)``: the object in each dimension k, None for zero"""

    algebra: object
    module: object
    n: int
    layers: dict

    def layer(self, k):
        return self.layers.get(k)

    def to_report(self):
        report = Report("profile", title=f"Homotopy of E({self.algebra.name}, {self.module.name}, {self.n})")
        for k in sorted(self.layers):
            obj = self.layers[k]
            if obj is None or obj.is_zero():
                report.add_row({"k": k, "object": "0", "groups": ""})
                continue
            groups = ", ".join(f"{d}: {g}" for d, g in obj.summary().items())
            report.add_row({"k": k, "object": obj.name, "groups": groups})
        return report


def em_homotopy_profile(algebra, module, n):
    """
    Homotopy of ``E_Λ(M, n)`` in each dimension k from 0 to n + 2

    It is Λ in dimension 0, ΩΛ in dimension 2, M in dimension n and ΩM in dimension n + 2, and zero otherwise;
    for n = 2 the two objects in dimension 2 merge into ``ΩΛ × M``.

    Parameters
    ----------
    algebra : StablePiAlgebra
    module : PiModule
    n : int
        At least 1

    Returns
    -------
    HomotopyProfile
    """
    if n < 1:
        raise ValueError(f"The cohomological dimension must be at least 1, got {n}")
    looped = loop(algebra)
    layers = {k: None for k in range(n + 3)}
    layers[0] = algebra
    layers[2] = looped
    if not module.is_zero():
        if n == 2:
            layers[2] = direct_sum(looped, module, name=f"{looped.name} × {module.name}")
        else:
            layers[n] = module
        layers[n + 2] = loop(module)
    return HomotopyProfile(algebra, module, n, layers)


# -------------------------------------------------------------------------------------------------------------------
# Obstructions
WINDOW_EXHAUSTED = "window-exhausted"
HOST_VANISHES = "host vanishes"
CLASS_UNDETERMINED = "class undetermined"
RESOLUTION_TOO_SHORT = "resolution too short"

OBSTRUCTION_COLUMNS = [
    "stage",
    "existence host",
    "existence",
    "difference host",
    "difference",
    "source existence",
    "source difference",
    "target existence",
    "target difference",
    "status",
]

REALIZABLE = "REALIZABLE"
NOT_REALIZABLE = "NOT REALIZABLE"
UNDECIDED = "UNDECIDED"


@dataclass
class ObstructionStage:
    """Host groups for the s-th obstruction: existence in ``H^{s+2}``, difference in ``H^{s+1}``, coefficients ``Ω^s``"""

    stage: int
    existence: FGAbelianGroup
    difference: FGAbelianGroup
    source_existence: FGAbelianGroup
    source_difference: FGAbelianGroup
    target_existence: FGAbelianGroup
    target_difference: FGAbelianGroup
    status: str

    def row(self):
        s = self.stage
        return {
            "stage": s,
            "existence host": f"H^{s + 2}_φ(φ;Ω^{s}φ)",
            "existence": str(self.existence),
            "difference host": f"H^{s + 1}_φ(φ;Ω^{s}φ)",
            "difference": str(self.difference),
            "source existence": str(self.source_existence),
            "source difference": str(self.source_difference),
            "target existence": str(self.target_existence),
            "target difference": str(self.target_difference),
            "status": self.status,
        }


@dataclass(eq=False)
class ObstructionReport:
    """Obstruction host groups of a map, stage by stage, with the bracket checks that bear on realizability"""

    map_name: str
    stages: list
    bracket_checks: list = field(default_factory=list)

    @property
    def verdict(self):
        if any(check.verdict == "CONTRADICTION" for check in self.bracket_checks):
            return NOT_REALIZABLE
        if not self.stages:
            return UNDECIDED
        # only stages whose host group was computed in full and vanished can clear the map
        if all(stage.status == HOST_VANISHES for stage in self.stages):
            return REALIZABLE
        return UNDECIDED

    def stage(self, s):
        return next(stage for stage in self.stages if stage.stage == s)

    def to_report(self):
        report = Report("obstruct", title=f"Obstructions to realizing {self.map_name}", columns=OBSTRUCTION_COLUMNS)
        for stage in self.stages:
            report.add_row(stage.row())
        if self.bracket_checks:
            section = Report("brackets", title="Bracket checks")
            for check in self.bracket_checks:
                section.add_row(check.row())
            report.add_section(section)
        report.notes.append("obstruction classes are not computed; only their host groups and bracket checks are")
        short = [stage.stage for stage in self.stages if stage.status == RESOLUTION_TOO_SHORT]
        if short:
            report.notes.append(f"stages {short} need resolution levels that were not built; their groups are not final")
        report.verdicts["verdict"] = self.verdict
        return report


def obstruction_report(phi, source_resolution, target_resolution, max_stage, bracket_checks=(), lift=None, verbose=False):
    """
    Host groups of the obstructions to realizing an algebra map, stage by stage

    Stage s uses the coefficients ``Ω^s φ``; the s-th class lives in ``H^{s+2}_φ(φ;Ω^s φ)`` and, when it vanishes,
    the choices are classified by ``H^{s+1}_φ(φ;Ω^s φ)``. The single-object groups of the source and target are
    reported next to them. A stage whose cochain groups are all zero is marked window-exhausted. A stage needs
    levels up to s+3 of both resolutions; when one stops short of that without being complete, the stage is marked
    as resolution-too-short and never counts towards REALIZABLE.

    Parameters
    ----------
    phi : PiMap
    source_resolution, target_resolution : FreeResolution
    max_stage : int
        Number of stages; 0 gives an empty report
    bracket_checks : list of BracketVerdict
        Realizability checks from bracket data
    lift : ResolutionMap
        Lift of ``phi``. Default: computed with :func:`~pialgkit.resolution.lift_map`
    verbose : bool
        Show a progress bar over the stages

    Returns
    -------
    ObstructionReport
    """
    if lift is None and max_stage > 0:
        lift = lift_map(phi, source_resolution, target_resolution)

    stages = []
    for s in tqdm(range(1, max_stage + 1), disable=not verbose, desc="obstruction stages"):
        tau = loop_coefficients(phi, s)
        cone = ArrowCochainComplex(lift, tau, max_degree=s + 2)
        source = cochain_complex(source_resolution, tau.source)
        target = cochain_complex(target_resolution, tau.target)
        existence = cone.homology(s + 2)
        if not (source_resolution.covers(s + 3) and target_resolution.covers(s + 3)):
            status = RESOLUTION_TOO_SHORT
        elif cone.is_trivial():
            status = WINDOW_EXHAUSTED
        elif existence.is_trivial:
            status = HOST_VANISHES
        else:
            status = CLASS_UNDETERMINED
        stage = ObstructionStage(
            stage=s,
            existence=existence,
            difference=cone.homology(s + 1),
            source_existence=source.homology(s + 2),
            source_difference=source.homology(s + 1),
            target_existence=target.homology(s + 2),
            target_difference=target.homology(s + 1),
            status=status,
        )
        logger.debug(f"stage {s}: existence host {existence}, {status}")
        stages.append(stage)

    report = ObstructionReport(phi.name or "map", stages, list(bracket_checks))
    logger.info(f"{report.map_name}: {report.verdict}")
    return report


def identity_coefficients(module):
    """Identity coefficient map on a module, lying over the identity of its base"""
    return PiMap.identity(module, over=PiMap.identity(module.base))


def loop_module(algebra, times=1):
    """``Ω^k Λ`` as a module over Λ"""
    return as_module(loop(algebra, times), base=algebra)

