"""Free graded modules over the stems, free resolutions of truncated Pi-algebras, and lifting maps to them"""

__all__ = [
    "FreeGradedModule",
    "FreeModuleMap",
    "FreeResolution",
    "ResolutionMap",
    "realize_degree",
    "induced_hom",
    "validate_resolution",
    "build_resolution",
    "lift_map",
    "perturb_lift",
]

import itertools
import math

from tqdm import tqdm

from . import DEFAULT_RESOLUTION_LENGTH, ENUMERATION_LIMIT, LIFT_SEARCH_RADIUS, logger
from .abelian import AbHom, ChainComplexAb, FGAbelianGroup, kernel, quotient, verify_exact, zeros
from .reports import ValidationReport
from .stems import StemElement, StemTable
from .utils import LiftError, StructuralError, format_degree


class FreeGradedModule:
    """
    Free module over the stable stems on named generators of given degrees.

    In degree d it is realized as the direct sum, over generators g, of the stem group in degree ``d - |g|``;
    the coordinates of each summand are labelled ``g∘θ``.
    """

    def __init__(self, generators=(), stems=None):
        """
        Parameters
        ----------
        generators : list of (str, int)
            Generator names and degrees, in basis order
        stems : StemTable
        """
        self.generators = [(str(name), int(degree)) for name, degree in generators]
        self.stems = stems or StemTable.default()
        self._degrees = dict(self.generators)
        if len(self._degrees) != len(self.generators):
            raise StructuralError(f"Duplicate generator names in {self.names}")
        self._realized = {}

    @property
    def names(self):
        return [name for name, _ in self.generators]

    def __len__(self):
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    def __eq__(self, other):
        if not isinstance(other, FreeGradedModule):
            return NotImplemented
        return self.generators == other.generators

    __hash__ = None

    def degree_of(self, name):
        if name not in self._degrees:
            raise StructuralError(f"Unknown generator {name}")
        return self._degrees[name]

    def blocks(self, degree):
        """(name, stem degree, first coordinate, size) for every generator contributing in ``degree``"""
        out = []
        start = 0
        for name, gen_degree in self.generators:
            offset = degree - gen_degree
            if not self.stems.in_window(offset):
                continue
            size = self.stems.group(offset).ngens
            if size:
                out.append((name, offset, start, size))
                start += size
        return out

    def realize(self, degree):
        """The group in one degree, with basis labels ``g∘θ``"""
        if degree not in self._realized:
            moduli, labels = [], []
            for name, offset, _, _ in self.blocks(degree):
                group = self.stems.group(offset)
                moduli.extend(group.moduli)
                labels.extend(self.stems.prefixed(name, label) for label in group.labels)
            self._realized[degree] = FGAbelianGroup(moduli, labels=labels)
        return self._realized[degree]

    def split(self, degree, vector):
        """Stem component of each generator in an element of degree ``degree``"""
        vector = self.realize(degree).reduce(vector)
        return {
            name: StemElement(offset, tuple(vector[start : start + size]))
            for name, offset, start, size in self.blocks(degree)
        }

    def element(self, degree, terms):
        """
        Coordinates of a formal sum of terms ``coefficient · g∘θ``

        Parameters
        ----------
        degree : int
            Total degree of every term
        terms : list of (str, str or dict or StemElement, int)
            Generator name, stem and integer coefficient

        Returns
        -------
        tuple of int
        """
        group = self.realize(degree)
        vector = [0] * group.ngens
        starts = {name: (offset, start, size) for name, offset, start, size in self.blocks(degree)}
        for name, stem, coefficient in terms:
            if not isinstance(stem, StemElement):
                stem = self.stems.parse(stem)
            if self.degree_of(name) + stem.degree != degree:
                raise StructuralError(
                    f"Term {name}∘{self.stems.format(stem)} has degree {format_degree(self.degree_of(name) + stem.degree)}, "
                    f"expected {format_degree(degree)}"
                )
            if name not in starts:
                continue
            _, start, size = starts[name]
            for i in range(size):
                vector[start + i] += int(coefficient) * stem.vector[i]
        return group.reduce(vector)

    def format_element(self, degree, vector):
        return self.realize(degree).format_element(vector)

    def act(self, degree, stem):
        """Right action of a stem element: ``g∘σ`` goes to ``g∘(σ∘θ)``"""
        if not isinstance(stem, StemElement):
            stem = self.stems.parse(stem)
        source = self.realize(degree)
        target = self.realize(degree + stem.degree)
        target_blocks = {name: start for name, _, start, _ in self.blocks(degree + stem.degree)}
        matrix = zeros(target.ngens, source.ngens)
        for name, offset, start, _ in self.blocks(degree):
            if name not in target_blocks:
                continue
            for k, (_, sigma) in enumerate(self.stems.basis(offset)):
                product = self.stems.compose(sigma, stem)
                for i, x in enumerate(product.vector):
                    matrix[target_blocks[name] + i, start + k] += x
        return AbHom(source, target, matrix)


def realize_degree(module, degree):
    """Group of a free module in one degree (see :meth:`FreeGradedModule.realize`)"""
    return module.realize(degree)


class FreeModuleMap:
    """Degree-preserving map of free modules, given by the image of every generator"""

    def __init__(self, source, target, images=None):
        """
        Parameters
        ----------
        source, target : FreeGradedModule
        images : dict of str: sequence of int
            Image of each generator g, in the coordinates of ``target.realize(|g|)``; missing generators map to 0
        """
        self.source = source
        self.target = target
        self.images = {}
        for name, vector in (images or {}).items():
            degree = source.degree_of(name)
            group = target.realize(degree)
            if len(vector) != group.ngens:
                raise StructuralError(
                    f"Image of {name} has {len(vector)} coordinates; the target has {group.ngens} in degree "
                    f"{format_degree(degree)}"
                )
            self.images[name] = group.reduce(vector)
        self._induced = {}

    @classmethod
    def from_terms(cls, source, target, terms):
        """Build from ``{generator: [[target_generator, stem, coefficient], ...]}``"""
        images = {
            name: target.element(source.degree_of(name), [tuple(t) for t in generator_terms])
            for name, generator_terms in terms.items()
        }
        return cls(source, target, images)

    @classmethod
    def identity(cls, module):
        images = {}
        for name, degree in module:
            images[name] = module.element(degree, [(name, module.stems.unit, 1)])
        return cls(module, module, images)

    @classmethod
    def zero(cls, source, target):
        return cls(source, target, {})

    def image(self, name):
        if name in self.images:
            return self.images[name]
        return self.target.realize(self.source.degree_of(name)).zero()

    def is_zero(self):
        return all(all(x == 0 for x in v) for v in self.images.values())

    def induced_hom(self, degree):
        """
        Matrix of the map on the realized groups in one degree

        A basis element ``g∘θ`` goes to ``f(g)∘θ``, computed by composing each stem component of ``f(g)`` with θ.
        """
        if degree in self._induced:
            return self._induced[degree]
        stems = self.source.stems
        source_group = self.source.realize(degree)
        target_group = self.target.realize(degree)
        target_blocks = self.target.blocks(degree)
        matrix = zeros(target_group.ngens, source_group.ngens)

        for name, offset, start, _ in self.source.blocks(degree):
            components = self.target.split(self.source.degree_of(name), self.image(name))
            for k, (_, theta) in enumerate(stems.basis(offset)):
                for target_name, _, target_start, target_size in target_blocks:
                    sigma = components.get(target_name)
                    if sigma is None or sigma.is_zero():
                        continue
                    product = stems.compose(sigma, theta)
                    for i in range(target_size):
                        matrix[target_start + i, start + k] += product.vector[i]

        hom = AbHom(source_group, target_group, matrix)
        self._induced[degree] = hom
        return hom

    def compose(self, other):
        """``self ∘ other``"""
        if other.target != self.source:
            raise StructuralError("Free module maps are not composable")
        images = {name: self.induced_hom(degree)(other.image(name)) for name, degree in other.source}
        return FreeModuleMap(other.source, self.target, images)

    def _combine(self, other, sign):
        if self.source != other.source or self.target != other.target:
            raise StructuralError("Free module maps must share source and target")
        images = {}
        for name, degree in self.source:
            group = self.target.realize(degree)
            images[name] = group.add(self.image(name), group.scale(sign, other.image(name)))
        return FreeModuleMap(self.source, self.target, images)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __eq__(self, other):
        if not isinstance(other, FreeModuleMap):
            return NotImplemented
        return (
            self.source == other.source
            and self.target == other.target
            and all(self.image(name) == other.image(name) for name in self.source.names)
        )

    __hash__ = None

    def describe(self):
        """``{generator: formatted image}``"""
        return {
            name: self.target.format_element(degree, self.image(name)) for name, degree in self.source
        }


def induced_hom(module_map, degree):
    """Matrix of a free module map in one degree (see :meth:`FreeModuleMap.induced_hom`)"""
    return module_map.induced_hom(degree)


def _augmentation_hom(module, augmentation, algebra, degree):
    # g∘θ goes to ε(g)∘θ, using the action of the algebra
    stems = module.stems
    source = module.realize(degree)
    target = algebra.group(degree)
    matrix = zeros(target.ngens, source.ngens)
    for name, offset, start, _ in module.blocks(degree):
        value = augmentation.get(name)
        if value is None:
            continue
        generator_degree = module.degree_of(name)
        for k, (_, theta) in enumerate(stems.basis(offset)):
            matrix[:, start + k] = list(algebra.act_element(generator_degree, theta)(value))
    return AbHom(source, target, matrix)


class FreeResolution:
    """
    Free resolution ``... -> V_2 -> V_1 -> V_0 -> Λ`` in normalized chain form.

    ``differentials[k - 1]`` is the map ``V_k -> V_{k-1}``; the augmentation sends each generator of ``V_0`` to an
    element of the algebra in the generator's degree.
    """

    def __init__(self, algebra, modules, differentials=(), augmentation=None, name=""):
        """
        Parameters
        ----------
        algebra : StablePiAlgebra
            The algebra being resolved
        modules : list of FreeGradedModule
            V_0, ..., V_L
        differentials : list of FreeModuleMap
            ∂_1, ..., ∂_L
        augmentation : dict of str: sequence of int
            ε on the generators of V_0
        name : str
        """
        self.algebra = algebra
        self.modules = list(modules) or [FreeGradedModule(stems=algebra.stems)]
        self.differentials = list(differentials)
        self.name = name
        if len(self.differentials) != len(self.modules) - 1:
            raise StructuralError(f"{len(self.modules)} levels need {len(self.modules) - 1} differentials")
        for k, d in enumerate(self.differentials, start=1):
            if d.source != self.modules[k] or d.target != self.modules[k - 1]:
                raise StructuralError(f"Differential ∂_{k} does not go from V_{k} to V_{k - 1}")

        self.augmentation = {}
        for name_, vector in (augmentation or {}).items():
            group = algebra.group(self.modules[0].degree_of(name_))
            if len(vector) != group.ngens:
                raise StructuralError(f"Augmentation of {name_} has {len(vector)} coordinates, expected {group.ngens}")
            self.augmentation[name_] = group.reduce(vector)

    @property
    def length(self):
        return len(self.differentials)

    @property
    def stems(self):
        return self.algebra.stems

    def module(self, level):
        if 0 <= level < len(self.modules):
            return self.modules[level]
        return FreeGradedModule(stems=self.stems)

    def differential(self, level):
        """∂_level: V_level -> V_{level-1}; a zero map past the top"""
        if 1 <= level <= self.length:
            return self.differentials[level - 1]
        return FreeModuleMap.zero(self.module(level), self.module(level - 1))

    def augmentation_hom(self, degree):
        """ε on the realized groups of V_0 in one degree"""
        return _augmentation_hom(self.modules[0], self.augmentation, self.algebra, degree)

    def chain_complex(self, degree):
        """The realized complex V_L -> ... -> V_0 in one degree"""
        groups = [self.module(k).realize(degree) for k in range(self.length + 1)]
        differentials = {k: self.differential(k).induced_hom(degree) for k in range(1, self.length + 1)}
        return ChainComplexAb(groups, differentials, check=False)

    def is_complete(self):
        """
        Whether the resolution stops because it is finished rather than cut off

        True when the top map (the augmentation for a single level) is injective in every degree of the algebra's
        window, so that every level above the top is zero.
        """
        for degree in self.algebra.degrees:
            top = self.differential(self.length).induced_hom(degree) if self.length else self.augmentation_hom(degree)
            if not kernel(top)[0].is_trivial:
                return False
        return True

    def covers(self, level):
        """Whether levels ``0 .. level`` are all known, either built or zero past a complete top"""
        return level <= self.length or self.is_complete()

    def generator_degrees(self):
        """Sorted generator degrees of each level"""
        return [sorted(degree for _, degree in module) for module in self.modules]

    def describe(self):
        """Rows of (level, generator, degree, boundary) for reports"""
        rows = []
        for level, module in enumerate(self.modules):
            images = self.differential(level).describe() if level else {}
            for name, degree in module:
                if level == 0:
                    boundary = self.algebra.format_element(degree, self.augmentation.get(name, self.algebra.group(degree).zero()))
                else:
                    boundary = images[name]
                rows.append({"level": level, "generator": name, "degree": format_degree(degree), "boundary": boundary})
        return rows


class ResolutionMap:
    """Chain map between two free resolutions, one free module map per level"""

    def __init__(self, source, target, components):
        self.source = source
        self.target = target
        self.components = list(components)

    def __len__(self):
        return len(self.components)

    def __getitem__(self, level):
        return self.components[level]

    def __iter__(self):
        return iter(self.components)

    def component(self, level):
        if 0 <= level < len(self.components):
            return self.components[level]
        return FreeModuleMap.zero(self.source.module(level), self.target.module(level))

    def check(self, phi):
        """
        Verify ``ε ∘ Φ_0 = φ ∘ ε`` and ``∂ ∘ Φ_k = Φ_{k-1} ∘ ∂`` on every generator

        Returns
        -------
        ValidationReport
        """
        report = ValidationReport(subject="lift")
        for name, degree in self.source.module(0):
            report.checks += 1
            lhs = self.target.augmentation_hom(degree)(self.component(0).image(name))
            rhs = phi.component(degree)(self.source.augmentation.get(name, self.source.algebra.group(degree).zero()))
            if lhs != rhs:
                report.add("augmentation", f"ε(Φ_0({name})) ≠ φ(ε({name}))", level=0, degree=degree, generator=name)
        for level in range(1, self.source.length + 1):
            for name, degree in self.source.module(level):
                report.checks += 1
                lhs = self.target.differential(level).induced_hom(degree)(self.component(level).image(name))
                rhs = self.component(level - 1).induced_hom(degree)(self.source.differential(level).image(name))
                if lhs != rhs:
                    report.add("chain map", f"∂Φ_{level}({name}) ≠ Φ_{level - 1}(∂{name})", level=level, degree=degree, generator=name)
        return report

    def describe(self):
        return [
            {"level": level, "generator": name, "image": image}
            for level, component in enumerate(self.components)
            for name, image in component.describe().items()
        ]


# -------------------------------------------------------------------------------------------------------------------
def validate_resolution(resolution, algebra=None):
    """
    Check that a resolution is a resolution, degree by degree over the window of the algebra

    Checks ``∂∘∂ = 0`` and ``ε∘∂_1 = 0``; that ε is onto, so ``H_0 ≅ Λ`` in every degree; and that the realized
    complex is exact at ``V_0, ..., V_{L-1}``. Exactness at the top level is not checked, since nothing above it
    has been built.

    Parameters
    ----------
    resolution : FreeResolution
    algebra : StablePiAlgebra
        Algebra to compare with. Default: the algebra the resolution was built for

    Returns
    -------
    ValidationReport
    """
    algebra = algebra or resolution.algebra
    report = ValidationReport(subject=resolution.name or "resolution")

    for degree in algebra.degrees:
        label = format_degree(degree)
        augmentation = _augmentation_hom(resolution.module(0), resolution.augmentation, algebra, degree)
        maps = [resolution.differential(k).induced_hom(degree) for k in range(resolution.length, 0, -1)]

        report.checks += 1
        cokernel_group, _ = quotient(augmentation.target, augmentation.matrix)
        if not cokernel_group.is_trivial:
            witness = augmentation.target.format_element(list(cokernel_group.section[:, 0]))
            report.add("augmentation", f"ε is not onto in degree {label}", level=0, degree=degree, witness=witness)

        sequence = maps + [augmentation]
        for i, (f, g) in enumerate(zip(sequence, sequence[1:])):
            report.checks += 1
            composite = g.compose(f)
            if not composite.is_zero():
                level = resolution.length - i
                j = next(j for j in range(f.source.ngens) if not composite.target.is_zero(composite.matrix[:, j]))
                on_augmentation = g is augmentation
                report.add(
                    "augmentation" if on_augmentation else "boundary",
                    f"ε∘∂_1 ≠ 0 in degree {label}" if on_augmentation else f"∂∘∂ ≠ 0 on V_{level} in degree {label}",
                    level=level,
                    degree=degree,
                    witness=f.source.format_element(f.source.basis_vector(j)),
                )

        if any(v.kind in ("boundary", "augmentation") and v.degree == degree and v.level != 0 for v in report.violations):
            continue

        if resolution.length == 0:
            # nothing above V_0, so ε itself must be injective
            sequence = [AbHom.zero(FGAbelianGroup.trivial(), augmentation.source)] + sequence
        exactness = verify_exact(sequence)
        for junction in exactness.failures:
            # junction i sits at the target of sequence[i]
            level = max(resolution.length - 1 - junction.index, 0)
            report.add(
                "homology",
                f"H_{level} ≠ 0 in degree {label}",
                level=level,
                degree=degree,
                witness=junction.witness_text,
            )

    if report.valid:
        logger.debug(f"{report.subject}: valid through level {max(resolution.length - 1, 0)}")
    return report


def build_resolution(algebra, length=DEFAULT_RESOLUTION_LENGTH, verbose=False, prefix="e"):
    """
    Greedy free resolution of an algebra

    Level 0 adds, in ascending degree, a generator for each coordinate of the algebra not yet hit by ε. Each
    further level realizes the kernel of the previous map degree by degree and adds a generator for each
    canonical kernel generator not yet in the image. Construction stops early once a kernel vanishes.

    Parameters
    ----------
    algebra : StablePiAlgebra
    length : int
        Number of levels above V_0
    verbose : bool
        Show a progress bar over the levels
    prefix : str
        Generators are named ``{prefix}{level}_{index}``

    Returns
    -------
    FreeResolution
    """
    stems = algebra.stems
    generators, augmentation = [], {}
    for degree in algebra.degrees:
        target = algebra.group(degree)
        while True:
            module = FreeGradedModule(generators, stems)
            hom = _augmentation_hom(module, augmentation, algebra, degree)
            missing = next(
                (i for i in range(target.ngens) if target.solve_in_span(hom.matrix, target.basis_vector(i)) is None),
                None,
            )
            if missing is None:
                break
            name = f"{prefix}0_{len(generators)}"
            generators.append((name, degree))
            augmentation[name] = target.basis_vector(missing)
    modules = [FreeGradedModule(generators, stems)]
    differentials = []
    logger.debug(f"level 0: generators in degrees {[format_degree(d) for _, d in generators]}")

    def previous_map(degree):
        if not differentials:
            return _augmentation_hom(modules[0], augmentation, algebra, degree)
        return differentials[-1].induced_hom(degree)

    for level in tqdm(range(1, length + 1), disable=not verbose, desc="resolution levels"):
        generators, images = [], {}
        below = modules[-1]
        for degree in algebra.degrees:
            cycles, inclusion = kernel(previous_map(degree))
            ambient = inclusion.target
            while True:
                module = FreeGradedModule(generators, stems)
                hom = FreeModuleMap(module, below, images).induced_hom(degree)
                missing = next(
                    (
                        k
                        for k in range(cycles.ngens)
                        if ambient.solve_in_span(hom.matrix, inclusion.matrix[:, k]) is None
                    ),
                    None,
                )
                if missing is None:
                    break
                name = f"{prefix}{level}_{len(generators)}"
                generators.append((name, degree))
                images[name] = ambient.reduce(inclusion.matrix[:, missing])

        if not generators:
            logger.debug(f"level {level}: kernel vanishes, stopping")
            break
        module = FreeGradedModule(generators, stems)
        differentials.append(FreeModuleMap(module, below, images))
        modules.append(module)
        logger.debug(f"level {level}: generators in degrees {[format_degree(d) for _, d in generators]}")

    resolution = FreeResolution(algebra, modules, differentials, augmentation, name=f"build({algebra.name})")
    logger.info(f"Built resolution of {algebra.name or 'algebra'} with {len(modules)} levels")
    return resolution


def _minimal_preimage(hom, value, radius=LIFT_SEARCH_RADIUS, limit=ENUMERATION_LIMIT):
    # Lex-minimal solution of hom(x) = value; infinite kernel directions are searched within ±radius
    source = hom.source
    particular = hom.target.solve_in_span(hom.matrix, value)
    if particular is None:
        return None
    particular = source.reduce(particular)
    cycles, inclusion = kernel(hom)
    if cycles.is_trivial:
        return particular

    ranges = [range(m) if m else range(-radius, radius + 1) for m in cycles.moduli]
    if math.prod(len(r) for r in ranges) > limit:
        logger.debug(f"Kernel of rank {cycles.rank} too large to search; keeping the first solution found")
        return particular
    candidates = (source.add(particular, inclusion(c)) for c in itertools.product(*ranges))
    return min(candidates, key=source.canonical_key)


def lift_map(phi, source_resolution, target_resolution, radius=LIFT_SEARCH_RADIUS):
    """
    Lift an algebra map to a chain map between free resolutions

    Solves ``ε ∘ Φ_0 = φ ∘ ε`` and ``∂ ∘ Φ_k = Φ_{k-1} ∘ ∂`` generator by generator, taking the solution that is
    smallest in the coordinate lex order. When the kernel to search is larger than ``ENUMERATION_LIMIT`` the first
    solution found is kept instead, and a debug line says so; the lift is still valid but may not be the minimal one.

    Parameters
    ----------
    phi : PiMap
        Map from the algebra of ``source_resolution`` to that of ``target_resolution``
    source_resolution, target_resolution : FreeResolution
    radius : int
        Search radius along infinite kernel directions when picking the minimal solution

    Returns
    -------
    ResolutionMap

    Raises
    ------
    LiftError
        If some equation has no solution (the resolutions or the map are not valid)
    """
    components = []
    images = {}
    for name, degree in source_resolution.module(0):
        value = phi.component(degree)(
            source_resolution.augmentation.get(name, source_resolution.algebra.group(degree).zero())
        )
        solution = _minimal_preimage(target_resolution.augmentation_hom(degree), value, radius)
        if solution is None:
            raise LiftError(f"No lift of {name} through the augmentation in degree {format_degree(degree)}")
        images[name] = solution
    components.append(FreeModuleMap(source_resolution.module(0), target_resolution.module(0), images))

    for level in range(1, source_resolution.length + 1):
        images = {}
        for name, degree in source_resolution.module(level):
            boundary = source_resolution.differential(level).image(name)
            value = components[-1].induced_hom(degree)(boundary)
            solution = _minimal_preimage(target_resolution.differential(level).induced_hom(degree), value, radius)
            if solution is None:
                raise LiftError(f"No lift of {name} on level {level} in degree {format_degree(degree)}")
            images[name] = solution
        components.append(FreeModuleMap(source_resolution.module(level), target_resolution.module(level), images))

    lift = ResolutionMap(source_resolution, target_resolution, components)
    report = lift.check(phi)
    if not report.valid:
        raise LiftError(f"Lift fails its own equations: {report.violations[0].message}")
    return lift


def perturb_lift(lift, source_resolution, target_resolution, homotopy):
    """
    Chain-homotopic alternative lift ``Φ'_k = Φ_k + ∂h_k + h_{k-1}∂``

    Parameters
    ----------
    lift : ResolutionMap
    source_resolution, target_resolution : FreeResolution
    homotopy : list of FreeModuleMap
        ``h_k: V_k -> W_{k+1}``; missing levels are zero

    Returns
    -------
    ResolutionMap
    """

    def h(level):
        if 0 <= level < len(homotopy) and homotopy[level] is not None:
            return homotopy[level]
        return FreeModuleMap.zero(source_resolution.module(level), target_resolution.module(level + 1))

    components = []
    for level in range(len(lift)):
        component = lift.component(level) + target_resolution.differential(level + 1).compose(h(level))
        if level > 0:
            component = component + h(level - 1).compose(source_resolution.differential(level))
        components.append(component)
    return ResolutionMap(source_resolution, target_resolution, components)
