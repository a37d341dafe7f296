"""Truncated stable Pi-algebras, modules over them and their maps"""

__all__ = [
    "StablePiAlgebra",
    "PiModule",
    "PiMap",
    "free_algebra",
    "loop",
    "loop_coefficients",
    "direct_sum",
    "as_module",
    "restrict_scalars",
    "validate_algebra",
    "validate_map",
    "coefficient_map",
]

import itertools

from . import logger
from .abelian import AbHom, FGAbelianGroup, block_matrix, zeros
from .reports import ValidationReport
from .stems import StemTable
from .utils import StructuralError, ValidationError, format_degree


class StablePiAlgebra:
    """
    Graded finitely generated abelian group on a window of degrees with a right action of the stable stems.

    Degrees are relative to the stable-range anchor n (stored as 0). The action is stored on named stem
    generators as homomorphisms ``group(d) -> group(d + |θ|)``; the unit acts as the identity and generators with a
    factorization in the stem table act through their factors unless an explicit action is stored for them.
    """

    kind = "algebra"

    def __init__(self, window, groups, action=None, stems=None, name=""):
        """
        Parameters
        ----------
        window : tuple of int
            Lowest and highest degree (inclusive)
        groups : dict of int: FGAbelianGroup
            Group in each degree; missing in-window degrees hold the zero group
        action : dict of (int, str): AbHom or matrix
            Action of a stem generator on one degree
        stems : StemTable
            Coefficient stems. Default: the built-in window
        name : str
            Label used in reports
        """
        lo, hi = (int(w) for w in window)
        if lo > hi:
            raise StructuralError(f"Empty window [{lo}, {hi}]")
        self.window = (lo, hi)
        self.stems = stems or StemTable.default()
        self.name = name

        self.groups = {}
        for degree, group in groups.items():
            degree = int(degree)
            if not lo <= degree <= hi:
                raise StructuralError(f"Group in degree {format_degree(degree)} lies outside the window")
            self.groups[degree] = group

        self.action = {}
        for (degree, stem), hom in (action or {}).items():
            degree = int(degree)
            target = degree + self.stems.degree_of(stem)
            if not (self.in_window(degree) and self.in_window(target)):
                continue
            if not isinstance(hom, AbHom):
                hom = AbHom(self.group(degree), self.group(target), hom, check=False)
            elif hom.source != self.group(degree) or hom.target != self.group(target):
                raise StructuralError(f"Action of {stem} on degree {format_degree(degree)} has the wrong shape")
            self.action[(degree, stem)] = hom

    # Structure
    def in_window(self, degree):
        return self.window[0] <= degree <= self.window[1]

    @property
    def degrees(self):
        return list(range(self.window[0], self.window[1] + 1))

    def group(self, degree):
        """Group in one degree; zero outside the window"""
        if not self.in_window(degree):
            return FGAbelianGroup.trivial()
        return self.groups.get(degree, FGAbelianGroup.trivial())

    def is_zero(self):
        return all(self.group(d).is_trivial for d in self.degrees)

    def act(self, degree, stem):
        """
        Action of a named stem generator

        Parameters
        ----------
        degree : int
            Degree acted on
        stem : str
            Stem generator name

        Returns
        -------
        AbHom from ``group(degree)`` to ``group(degree + |stem|)``
        """
        source = self.group(degree)
        shift = self.stems.degree_of(stem)
        target = self.group(degree + shift)
        if stem == self.stems.unit:
            return AbHom.identity(source)
        if (degree, stem) in self.action:
            return self.action[(degree, stem)]
        if source.ngens == 0 or target.ngens == 0:
            return AbHom.zero(source, target)
        factors = self.stems.factorization(stem)
        if factors is not None:
            # x∘(a∘b) = (x∘a)∘b
            left, right = factors
            return self.act(degree + self.stems.degree_of(left), right).compose(self.act(degree, left))
        return AbHom.zero(source, target)

    def act_element(self, degree, stem):
        """Action of an arbitrary stem element, extended bilinearly from the generators"""
        source = self.group(degree)
        target = self.group(degree + stem.degree)
        matrix = zeros(target.ngens, source.ngens)
        for (name, _), coefficient in zip(self.stems.basis(stem.degree), stem.vector):
            if coefficient:
                matrix = matrix + coefficient * self.act(degree, name).matrix
        return AbHom(source, target, matrix, check=False)

    def format_element(self, degree, vector):
        return self.group(degree).format_element(vector)

    def summary(self):
        """Group names by degree, eg ``{"n": "Z/2", "n+1": "Z/2"}``"""
        return {format_degree(d): str(self.group(d)) for d in self.degrees}

    def _replace(self, window, groups, action, **kwargs):
        return StablePiAlgebra(window, groups, action, stems=self.stems, name=kwargs.get("name", self.name))

    def __eq__(self, other):
        if not isinstance(other, StablePiAlgebra):
            return NotImplemented
        if self is other:
            return True
        if self.window != other.window or any(self.group(d) != other.group(d) for d in self.degrees):
            return False
        keys = set(self.action) | set(other.action)
        return all(self.act(d, s) == other.act(d, s) for d, s in keys)

    __hash__ = object.__hash__

    def __repr__(self):
        groups = ", ".join(f"{k}: {v}" for k, v in self.summary().items())
        return f"{type(self).__name__}({self.name or 'unnamed'}; {groups})"


class PiModule(StablePiAlgebra):
    """
    Module over a truncated stable Pi-algebra.

    In the stable range every module is trivial: the bracket pairing with the base is zero, so a module carries
    exactly the data of an algebra together with the reference to its base.
    """

    kind = "module"
    trivial_brackets = True

    def __init__(self, window, groups, action=None, stems=None, name="", base=None):
        super().__init__(window, groups, action, stems=stems, name=name)
        if base is None:
            raise StructuralError("A module needs a base algebra")
        self.base = base

    def _replace(self, window, groups, action, **kwargs):
        return PiModule(
            window,
            groups,
            action,
            stems=self.stems,
            name=kwargs.get("name", self.name),
            base=kwargs.get("base", self.base),
        )


def as_module(algebra, base=None, name=None):
    """View an algebra (or re-base a module) as a module over ``base`` (default: itself)"""
    return PiModule(
        algebra.window,
        dict(algebra.groups),
        dict(algebra.action),
        stems=algebra.stems,
        name=name if name is not None else algebra.name,
        base=base if base is not None else algebra,
    )


class PiMap:
    """
    Degreewise homomorphism between two algebras or two modules.

    For a map of modules, ``over`` is the algebra map relating the two bases. Components are stored as
    :class:`AbHom` built without a torsion check, so that :func:`validate_map` can report bad input instead of
    failing at construction.
    """

    def __init__(self, source, target, components=None, over=None, name=""):
        self.source = source
        self.target = target
        self.over = over
        self.name = name
        if source.stems is not target.stems and source.stems.to_dict() != target.stems.to_dict():
            raise StructuralError("Source and target use different stem tables")

        self.components = {}
        for degree, hom in (components or {}).items():
            degree = int(degree)
            if not isinstance(hom, AbHom):
                hom = AbHom(source.group(degree), target.group(degree), hom, check=False)
            elif hom.source != source.group(degree) or hom.target != target.group(degree):
                raise StructuralError(f"Component in degree {format_degree(degree)} has the wrong shape")
            self.components[degree] = hom

    @classmethod
    def identity(cls, obj, over=None):
        return cls(obj, obj, {d: AbHom.identity(obj.group(d)) for d in obj.degrees}, over=over, name="id")

    @classmethod
    def zero(cls, source, target, over=None):
        return cls(source, target, {}, over=over, name="0")

    @property
    def degrees(self):
        return self.source.degrees

    def component(self, degree):
        """Component in one degree; zero where none is stored"""
        if degree in self.components:
            return self.components[degree]
        return AbHom.zero(self.source.group(degree), self.target.group(degree))

    def __call__(self, degree, vector):
        return self.component(degree)(vector)

    def __repr__(self):
        return f"PiMap({self.name or 'unnamed'}: {self.source.name} -> {self.target.name})"


# -------------------------------------------------------------------------------------------------------------------
# Constructions
def free_algebra(degree, window=None, stems=None, generator="ι", name=None):
    """
    Free algebra on one generator, truncated to a window

    Parameters
    ----------
    degree : int
        Degree of the generator
    window : tuple of int
        Degrees kept. Default: from the generator up to the top of the stem window
    stems : StemTable
    generator : str
        Name of the generator; elements are labelled ``generator∘θ``
    name : str

    Returns
    -------
    StablePiAlgebra whose action is stem composition
    """
    stems = stems or StemTable.default()
    if window is None:
        window = (degree, degree + stems.max_degree)
    groups = {}
    for d in range(window[0], window[1] + 1):
        offset = d - degree
        if stems.in_window(offset):
            stem_group = stems.group(offset)
            labels = [stems.prefixed(generator, label) for label in stem_group.labels]
            groups[d] = FGAbelianGroup(stem_group.moduli, labels=labels)

    algebra = StablePiAlgebra(window, groups, stems=stems, name=name or f"free({format_degree(degree)})")
    action = {}
    for d in algebra.degrees:
        offset = d - degree
        if not stems.in_window(offset):
            continue
        for stem in stems.indecomposables():
            target = d + stems.degree_of(stem)
            if not algebra.in_window(target):
                continue
            source_group, target_group = algebra.group(d), algebra.group(target)
            matrix = zeros(target_group.ngens, source_group.ngens)
            for index, (_, basis_stem) in enumerate(stems.basis(offset)):
                product = stems.compose(basis_stem, stems.element(stem))
                if target_group.ngens:
                    matrix[:, index] = list(product.vector)
            action[(d, stem)] = AbHom(source_group, target_group, matrix)
    return StablePiAlgebra(window, groups, action, stems=stems, name=algebra.name)


def loop(obj, times=1):
    """
    Loop shift: ``(ΩM)_d = M_{d+1}`` with the action inherited degreewise

    Parameters
    ----------
    obj : StablePiAlgebra, PiModule or PiMap
    times : int
        Number of shifts

    Returns
    -------
    Object of the same kind
    """
    if times < 0:
        raise ValueError("Cannot loop a negative number of times")
    if isinstance(obj, PiMap):
        components = {d - times: hom for d, hom in obj.components.items()}
        source, target = loop(obj.source, times), loop(obj.target, times)
        return PiMap(source, target, components, over=obj.over, name=_looped(obj.name, times))
    if times == 0:
        return obj
    lo, hi = obj.window
    groups = {d - times: g for d, g in obj.groups.items()}
    action = {(d - times, stem): hom for (d, stem), hom in obj.action.items()}
    return obj._replace((lo - times, hi - times), groups, action, name=_looped(obj.name, times))


def _looped(name, times):
    if not name or times == 0:
        return name
    return ("Ω" if times == 1 else f"Ω^{times}") + name


def loop_coefficients(phi, times=1):
    """
    The coefficient map ``Ω^k φ`` as a map of modules over ``φ``

    Parameters
    ----------
    phi : PiMap
        Map of algebras
    times : int

    Returns
    -------
    PiMap from ``Ω^k source`` (a module over ``phi.source``) to ``Ω^k target`` (over ``phi.target``)
    """
    looped = loop(phi, times)
    source = as_module(looped.source, base=phi.source)
    target = as_module(looped.target, base=phi.target)
    return PiMap(source, target, looped.components, over=phi, name=looped.name)


def direct_sum(first, second, name=None):
    """
    Degreewise direct sum with block-diagonal action

    The result is a module when either summand is one (over that summand's base), otherwise an algebra.
    """
    if first.stems.to_dict() != second.stems.to_dict():
        raise StructuralError("Summands use different stem tables")
    window = (min(first.window[0], second.window[0]), max(first.window[1], second.window[1]))
    groups = {}
    for d in range(window[0], window[1] + 1):
        summed = FGAbelianGroup.direct_sum(first.group(d), second.group(d))
        if summed.ngens:
            groups[d] = summed

    action = {}
    keys = {key for obj in (first, second) for key in obj.action}
    keys |= {(d, s) for d in range(window[0], window[1] + 1) for s in first.stems.indecomposables()}
    for degree, stem in sorted(keys):
        target = degree + first.stems.degree_of(stem)
        if not window[0] <= target <= window[1]:
            continue
        blocks = [[first.act(degree, stem).matrix, None], [None, second.act(degree, stem).matrix]]
        matrix = block_matrix(
            blocks,
            [first.group(target).ngens, second.group(target).ngens],
            [first.group(degree).ngens, second.group(degree).ngens],
        )
        action[(degree, stem)] = matrix

    name = name or f"{first.name} × {second.name}"
    for obj in (first, second):
        if isinstance(obj, PiModule):
            return PiModule(window, groups, action, stems=first.stems, name=name, base=obj.base)
    return StablePiAlgebra(window, groups, action, stems=first.stems, name=name)


def restrict_scalars(module, phi):
    """
    Pull a module back along an algebra map: same groups and action, base swapped to the source of ``phi``

    Parameters
    ----------
    module : PiModule
        Module over ``phi.target``
    phi : PiMap

    Returns
    -------
    PiModule over ``phi.source``
    """
    if module.base != phi.target:
        raise StructuralError(f"Module {module.name} is not over {phi.target.name}")
    name = f"{phi.name}*{module.name}" if phi.name else module.name
    return as_module(module, base=phi.source, name=name)


# -------------------------------------------------------------------------------------------------------------------
# Validation
def _torsion_failure(hom):
    # First source generator whose order does not kill its image
    for j, m in enumerate(hom.source.moduli):
        if m and not hom.target.is_zero([m * x for x in hom.matrix[:, j]]):
            return j
    return None


def validate_algebra(algebra):
    """
    Check the action axioms of an algebra or module

    Checks, on every in-window degree: the unit acts as the identity; each stored action is additive in the
    element (its matrix respects the torsion of the source) and in the stem (the order of the stem kills it);
    composing actions agrees with the stem product, ``(x∘a)∘b = x∘(a∘b)``, for every pair of stem generators.

    Parameters
    ----------
    algebra : StablePiAlgebra or PiModule

    Returns
    -------
    ValidationReport
    """
    stems = algebra.stems
    report = ValidationReport(subject=algebra.name or algebra.kind)

    for (degree, stem), hom in sorted(algebra.action.items(), key=lambda item: (item[0][0], item[0][1])):
        report.checks += 1
        if stem == stems.unit and hom != AbHom.identity(algebra.group(degree)):
            report.add("unit", f"ι does not act as the identity on {format_degree(degree)}", degree=degree, generator=stem)

        j = _torsion_failure(hom)
        report.checks += 1
        if j is not None:
            order = hom.source.moduli[j]
            element = hom.source.basis_vector(j)
            image = [order * x for x in hom.matrix[:, j]]
            report.add(
                "bilinearity",
                f"{order}·({hom.source.format_element(element)})∘{stem} = {hom.target.format_element(image)} "
                f"but {order}·{hom.source.format_element(element)} = 0",
                degree=degree,
                generator=stem,
                witness=hom.source.format_element(element),
            )

        stem_order = stems.order_of(stem)
        report.checks += 1
        unkilled = [
            j for j in range(hom.source.ngens) if not hom.target.is_zero([stem_order * x for x in hom.matrix[:, j]])
        ]
        if stem_order and unkilled:
            j = unkilled[0]
            report.add(
                "bilinearity",
                f"{stem} has order {stem_order} but {stem_order}·(x∘{stem}) ≠ 0 for x = "
                f"{hom.source.format_element(hom.source.basis_vector(j))}",
                degree=degree,
                generator=stem,
                witness=hom.source.format_element(hom.source.basis_vector(j)),
            )

    positive = [name for name in stems.names if stems.degree_of(name) > 0]
    for degree in algebra.degrees:
        for a, b in itertools.product(positive, repeat=2):
            middle = degree + stems.degree_of(a)
            top = middle + stems.degree_of(b)
            if not algebra.in_window(top) or stems.degree_of(a) + stems.degree_of(b) > stems.max_degree:
                continue
            if algebra.group(degree).ngens == 0 or algebra.group(top).ngens == 0:
                continue
            report.checks += 1
            iterated = algebra.act(middle, b).compose(algebra.act(degree, a))
            product = algebra.act_element(degree, stems.compose(stems.element(a), stems.element(b)))
            if iterated != product:
                j = next(
                    j for j in range(iterated.source.ngens) if iterated.matrix[:, j].tolist() != product.matrix[:, j].tolist()
                )
                x = algebra.group(degree).format_element(algebra.group(degree).basis_vector(j))
                report.add(
                    "associativity",
                    f"({x}∘{a})∘{b} = {iterated.target.format_element(iterated.matrix[:, j])} but "
                    f"{x}∘({a}∘{b}) = {product.target.format_element(product.matrix[:, j])}",
                    degree=degree,
                    generator=f"{a},{b}",
                    witness=x,
                )

    if report.valid:
        logger.debug(f"{report.subject}: {report.checks} action checks passed")
    return report


def validate_map(phi):
    """
    Check that a map respects torsion and commutes with the stem action in every degree where both the source
    and the target of an action lie in both windows

    Parameters
    ----------
    phi : PiMap

    Returns
    -------
    ValidationReport
    """
    stems = phi.source.stems
    report = ValidationReport(subject=phi.name or "map")
    source, target = phi.source, phi.target

    for degree in source.degrees:
        hom = phi.component(degree)
        report.checks += 1
        j = _torsion_failure(hom)
        if j is not None:
            element = hom.source.basis_vector(j)
            report.add(
                "torsion",
                f"{hom.source.format_element(element)} has order {hom.source.moduli[j]} but its image "
                f"{hom.target.format_element(hom.matrix[:, j])} does not",
                degree=degree,
                witness=hom.source.format_element(element),
            )

    for degree in source.degrees:
        for stem in stems.names:
            shift = stems.degree_of(stem)
            top = degree + shift
            if shift == 0 or not (source.in_window(top) and target.in_window(top) and target.in_window(degree)):
                continue
            report.checks += 1
            lhs = phi.component(top).compose(source.act(degree, stem))
            rhs = target.act(degree, stem).compose(phi.component(degree))
            if lhs != rhs:
                j = next(j for j in range(lhs.source.ngens) if lhs.matrix[:, j].tolist() != rhs.matrix[:, j].tolist())
                x = source.format_element(degree, source.group(degree).basis_vector(j))
                report.add(
                    "equivariance",
                    f"φ({x}∘{stem}) = {lhs.target.format_element(lhs.matrix[:, j])} but "
                    f"φ({x})∘{stem} = {rhs.target.format_element(rhs.matrix[:, j])}",
                    degree=degree,
                    generator=stem,
                    witness=x,
                )
    return report


def coefficient_map(tau, over=None):
    """
    Validate a map of coefficient modules over an algebra map

    Parameters
    ----------
    tau : PiMap
        Map of modules ``M_0 -> M_1``
    over : PiMap
        Algebra map ``Λ_0 -> Λ_1`` with ``M_0`` over ``Λ_0`` and ``M_1`` over ``Λ_1``. Default: ``tau.over``

    Returns
    -------
    PiMap
        A new map with the components of ``tau`` and ``over`` recorded; ``tau`` is left as it was

    Raises
    ------
    ValidationError
        If the map fails torsion or equivariance checks; the report carries the witnesses
    """
    over = over or tau.over
    if over is not None:
        for module, algebra in ((tau.source, over.source), (tau.target, over.target)):
            if isinstance(module, PiModule) and module.base != algebra:
                raise StructuralError(f"Module {module.name} is not over {algebra.name}")

    report = validate_map(tau)
    if not report.valid:
        raise ValidationError(f"Coefficient map {tau.name} is not a map of modules: {report.violations[0].message}", report)
    return PiMap(tau.source, tau.target, tau.components, over=over, name=tau.name)

