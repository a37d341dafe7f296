"""Toda brackets as cosets in a Pi-algebra, their pushforward along maps, and realizability checks built on them"""

__all__ = [
    "BracketTriple",
    "TodaBracketCoset",
    "ElementSet",
    "BracketVerdict",
    "indeterminacy",
    "bracket",
    "pushforward",
    "realizability_contradiction",
    "check_realizability",
    "readings",
    "bracket_report",
    "CONTRADICTION",
    "CONSISTENT",
]

from dataclasses import dataclass, field

import numpy as np

from . import ENUMERATION_LIMIT
from .abelian import matmul, subgroup, zeros
from .reports import Report
from .stems import StemElement
from .utils import StructuralError, format_degree

CONTRADICTION = "CONTRADICTION"
CONSISTENT = "CONSISTENT"


@dataclass(eq=False)
class BracketTriple:
    """
    Three composable pieces ``f``, ``g`` (stems) and ``h`` (an element of an algebra) with ``h∘g = 0`` and
    ``g∘f = 0``.

    The bracket ``⟨f, g, h⟩`` lies in degree ``d + |g| + |f| + 1`` of the algebra, where d is the degree of h.
    """

    f: StemElement
    g: StemElement
    algebra: object
    degree: int
    h: tuple
    name: str = ""

    def __post_init__(self):
        stems = self.algebra.stems
        self.h = self.algebra.group(self.degree).reduce(self.h)
        if not stems.compose(self.g, self.f).is_zero():
            raise StructuralError(f"g∘f = {stems.format(stems.compose(self.g, self.f))} is not zero")
        hg = self.algebra.act_element(self.degree, self.g)(self.h)
        if not self.algebra.group(self.degree + self.g.degree).is_zero(hg):
            raise StructuralError(
                f"h∘g = {self.algebra.format_element(self.degree + self.g.degree, hg)} is not zero"
            )

    @property
    def target_degree(self):
        return self.degree + self.g.degree + self.f.degree + 1

    @property
    def ambient(self):
        return self.algebra.group(self.target_degree)

    def describe(self):
        stems = self.algebra.stems
        return f"⟨{stems.format(self.f)}, {stems.format(self.g)}, {self.algebra.format_element(self.degree, self.h)}⟩"

    def pushed(self, phi):
        """The triple ``⟨f, g, φ(h)⟩`` in the target of ``phi``"""
        return BracketTriple(self.f, self.g, phi.target, self.degree, phi(self.degree, self.h), name=self.name)


def indeterminacy(triple):
    """
    Indeterminacy ``h∘π_{|g|+|f|+1} + Λ_{d+|g|+1}∘f`` of a bracket, as generators of a subgroup of the ambient

    Parameters
    ----------
    triple : BracketTriple

    Returns
    -------
    numpy.ndarray
        Matrix whose columns generate the indeterminacy in the ambient group's coordinates
    """
    algebra, stems = triple.algebra, triple.algebra.stems
    ambient = triple.ambient
    columns = []

    # h composed with every stem of the complementary degree
    offset = triple.g.degree + triple.f.degree + 1
    if stems.in_window(offset):
        for _, theta in stems.basis(offset):
            columns.append(algebra.act_element(triple.degree, theta)(triple.h))

    # anything of the middle degree composed with f
    middle = triple.degree + triple.g.degree + 1
    action = algebra.act_element(middle, triple.f)
    for j in range(algebra.group(middle).ngens):
        columns.append(action.matrix[:, j].tolist())

    generators = zeros(ambient.ngens, len(columns))
    for j, column in enumerate(columns):
        generators[:, j] = list(ambient.reduce(column))
    return generators


class TodaBracketCoset:
    """
    Coset ``representative + indeterminacy`` in one degree of an algebra.

    The indeterminacy is kept as generators; membership is decided by solving in their span, and the elements are
    enumerated only when the indeterminacy is finite.
    """

    def __init__(self, ambient, representative, generators, triple=None, name=""):
        """
        Parameters
        ----------
        ambient : FGAbelianGroup
        representative : sequence of int
        generators : numpy.ndarray
            Columns generating the indeterminacy
        triple : BracketTriple
            Where the coset came from, if it is a bracket
        name : str
        """
        self.ambient = ambient
        if len(representative) != ambient.ngens:
            raise StructuralError(
                f"Representative has {len(representative)} coordinates, the ambient group {ambient} has {ambient.ngens}"
            )
        self.representative = ambient.reduce(representative)
        self.generators = generators if generators.shape[0] == ambient.ngens else zeros(ambient.ngens, 0)
        self.triple = triple
        self.name = name
        self.indeterminacy, self._inclusion = subgroup(ambient, self.generators)

    def contains(self, element):
        difference = self.ambient.add(element, self.ambient.scale(-1, self.representative))
        return self.ambient.solve_in_span(self.generators, difference) is not None

    __contains__ = contains

    @property
    def is_finite(self):
        return self.indeterminacy.is_finite

    def elements(self, limit=ENUMERATION_LIMIT):
        """Every element of the coset, sorted"""
        found = {
            self.ambient.add(self.representative, self._inclusion(x)) for x in self.indeterminacy.elements(limit)
        }
        return sorted(found, key=self.ambient.canonical_key)

    def element_set(self):
        return ElementSet(self.ambient, self.elements(), name=self.name)

    def with_representative(self, representative):
        """Same coset data with another representative"""
        return TodaBracketCoset(self.ambient, representative, self.generators, self.triple, self.name)

    def __eq__(self, other):
        if not isinstance(other, TodaBracketCoset):
            return NotImplemented
        if self.ambient != other.ambient or not other.contains(self.representative):
            return False
        return _spans(other, self.generators) and _spans(self, other.generators)

    __hash__ = None

    def format(self):
        if self.is_finite:
            return self.element_set().format()
        return f"{self.ambient.format_element(self.representative)} + ⟨{', '.join(self.indeterminacy.labels)}⟩"

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"TodaBracketCoset({self.format()} in {self.ambient})"


def _spans(coset, columns):
    # every column lies in the indeterminacy of coset
    return all(
        coset.ambient.solve_in_span(coset.generators, columns[:, j]) is not None for j in range(columns.shape[1])
    )


class ElementSet:
    """Finite set of elements of one group, printed like ``{6ν, 18ν}``"""

    def __init__(self, ambient, elements, name=""):
        self.ambient = ambient
        self.elements = sorted({ambient.reduce(e) for e in elements}, key=ambient.canonical_key)
        self.name = name

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def contains(self, element):
        return self.ambient.reduce(element) in self.elements

    __contains__ = contains

    def __eq__(self, other):
        if not isinstance(other, ElementSet):
            return NotImplemented
        return self.ambient == other.ambient and self.elements == other.elements

    __hash__ = None

    def format(self):
        return "{" + ", ".join(self.ambient.format_element(e) for e in self.elements) + "}"

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"ElementSet({self.format()} in {self.ambient})"


def bracket(triple, representative):
    """
    The bracket ``⟨f, g, h⟩`` as the coset of a supplied representative

    Parameters
    ----------
    triple : BracketTriple
    representative : sequence of int
        An element of the bracket, in the coordinates of the ambient degree

    Returns
    -------
    TodaBracketCoset

    Raises
    ------
    StructuralError
        If the representative does not have the shape of the ambient group
    """
    return TodaBracketCoset(triple.ambient, list(representative), indeterminacy(triple), triple, name=triple.name)


def pushforward(coset, phi):
    """
    Image of a coset under an algebra map

    Parameters
    ----------
    coset : TodaBracketCoset
        Coset in the source of ``phi``; it must come from a bracket so its degree is known
    phi : PiMap

    Returns
    -------
    ElementSet when the coset is finite, otherwise the image coset
    """
    if coset.triple is None:
        raise StructuralError("Only bracket cosets carry the degree needed for a pushforward")
    degree = coset.triple.target_degree
    if coset.ambient != phi.source.group(degree):
        raise StructuralError(f"{phi.name or 'The map'} is not defined on the ambient group of {coset.name}")
    component = phi.component(degree)
    name = f"{phi.name}_*{coset.name}" if phi.name else coset.name
    if coset.is_finite:
        return ElementSet(component.target, [component(x) for x in coset.elements()], name=name)
    return TodaBracketCoset(
        component.target,
        component(coset.representative),
        matmul(component.matrix, coset.generators),
        name=name,
    )


@dataclass(eq=False)
class BracketVerdict:
    """Outcome of comparing a pushed bracket with a bracket of the target"""

    verdict: str
    pushed: object
    target: object
    intersection: ElementSet
    label: str = ""
    notes: list = field(default_factory=list)

    @property
    def consistent(self):
        return self.verdict == CONSISTENT

    def row(self):
        return {
            "reading": self.label,
            "pushed": str(self.pushed),
            "target": str(self.target),
            "intersection": str(self.intersection),
            "verdict": self.verdict,
        }

    def to_dict(self):
        return self.row()


def _listed(value):
    # every element of a finite set or coset, None for an infinite coset
    if isinstance(value, TodaBracketCoset):
        return value.elements() if value.is_finite else None
    return list(value)


def _common(pushed, target):
    # elements in both sets; for two infinite cosets, one witness of their intersection
    for first, second in ((pushed, target), (target, pushed)):
        listed = _listed(first)
        if listed is not None:
            return [x for x in listed if second.contains(x)]
    ambient = pushed.ambient
    difference = ambient.add(pushed.representative, ambient.scale(-1, target.representative))
    solution = ambient.solve_in_span(np.hstack([pushed.generators, target.generators]), difference)
    if solution is None:
        return []
    # r1 - r2 = H1 a + H2 b, so r1 - H1 a lies in both cosets
    k = pushed.generators.shape[1]
    shift = [sum(pushed.generators[i, j] * solution[j] for j in range(k)) for i in range(ambient.ngens)]
    return [ambient.add(pushed.representative, ambient.scale(-1, shift))]


def realizability_contradiction(pushed, target, label=""):
    """
    Compare the pushforward of a source bracket with a bracket in the target

    A realizable map sends the source bracket into the target bracket, so disjoint sets are a contradiction.

    Parameters
    ----------
    pushed : ElementSet or TodaBracketCoset
        Image of the source bracket; a coset when its indeterminacy is infinite
    target : TodaBracketCoset or ElementSet
    label : str
        Name of the reading of the target bracket

    Returns
    -------
    BracketVerdict
        CONTRADICTION when the sets are disjoint, CONSISTENT otherwise, with the intersection as witness

    Raises
    ------
    StructuralError
        If the two sets live in different groups
    """
    if pushed.ambient != target.ambient:
        raise StructuralError(f"Cannot compare elements of {pushed.ambient} with elements of {target.ambient}")
    common = ElementSet(pushed.ambient, _common(pushed, target))
    verdict = CONSISTENT if len(common) else CONTRADICTION
    return BracketVerdict(verdict, pushed, target, common, label=label)


def readings(coset, recorded=None):
    """
    The coset together with every recorded reading of its value

    Parameters
    ----------
    coset : TodaBracketCoset
    recorded : dict of str: list of sequences
        Alternative statements of the bracket's value, as lists of elements

    Returns
    -------
    dict of str: ElementSet or TodaBracketCoset, the computed coset first under ``"coset"``
    """
    out = {"coset": coset.element_set() if coset.is_finite else coset}
    for label, elements in (recorded or {}).items():
        out[label] = ElementSet(coset.ambient, elements, name=label)
    return out


def check_realizability(phi, source, target, recorded=None):
    """
    Push a source bracket along ``phi`` and compare it with the matching target bracket under every reading

    Parameters
    ----------
    phi : PiMap
    source : TodaBracketCoset
        Bracket ``⟨f, g, h⟩`` in the source of ``phi``
    target : TodaBracketCoset
        Bracket ``⟨f, g, φ(h)⟩`` in the target
    recorded : dict
        Recorded readings of the target bracket (see :func:`readings`)

    Returns
    -------
    list of BracketVerdict, one per reading

    Raises
    ------
    StructuralError
        If the target bracket is not the image triple of the source bracket
    """
    if source.triple is None or target.triple is None:
        raise StructuralError("Realizability checks need bracket cosets")
    s, t = source.triple, target.triple
    expected = s.pushed(phi)
    if (
        s.f != t.f
        or s.g != t.g
        or t.degree != s.degree
        or tuple(expected.h) != tuple(t.h)
        or t.algebra != phi.target
    ):
        raise StructuralError(f"{t.describe()} is not the image of {s.describe()} under {phi.name or 'the map'}")

    pushed = pushforward(source, phi)
    return [
        realizability_contradiction(pushed, value, label=label) for label, value in readings(target, recorded).items()
    ]


def bracket_report(coset, recorded=None, checks=()):
    """Report of one bracket: its coset, indeterminacy, readings and the realizability verdicts involving it"""
    triple = coset.triple
    title = f"Bracket {coset.name or triple.describe()}" if triple else f"Coset {coset.name}"
    report = Report("bracket", title=title, columns=["reading", "elements"])
    for label, value in readings(coset, recorded).items():
        report.add_row({"reading": label, "elements": str(value)})
    if triple is not None:
        report.verdicts["triple"] = triple.describe()
        report.verdicts["degree"] = format_degree(triple.target_degree)
    report.verdicts["ambient"] = str(coset.ambient)
    report.verdicts["indeterminacy"] = str(coset.indeterminacy)
    if checks:
        section = Report("realizability", title="Realizability checks")
        for check in checks:
            section.add_row(check.row())
        report.add_section(section)
        report.verdicts["verdict"] = CONTRADICTION if any(not c.consistent for c in checks) else CONSISTENT
    return report
