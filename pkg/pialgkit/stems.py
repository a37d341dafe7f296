"""The truncated ring of stable stems acting on every graded object in pialgkit"""

__all__ = ["StemElement", "StemTable", "stem_group", "compose"]

import itertools
from dataclasses import dataclass

from . import STEM_MAX_DEGREE
from .abelian import FGAbelianGroup
from .reports import ValidationReport
from .utils import InputError, WindowError

# Built-in window: pi_0 .. pi_5 with eta^3 = 12 nu.
# pi_2 is Z/2 generated by eta^2; a table declaring Z/4 there fails bilinearity.
DEFAULT_STEMS = [
    {"degree": 0, "invariant_factors": [0], "generators": ["ι"]},
    {"degree": 1, "invariant_factors": [2], "generators": ["η"]},
    {"degree": 2, "invariant_factors": [2], "generators": ["η²"]},
    {"degree": 3, "invariant_factors": [24], "generators": ["ν"]},
    {"degree": 4, "invariant_factors": [], "generators": []},
    {"degree": 5, "invariant_factors": [], "generators": []},
]

DEFAULT_PRODUCTS = [
    {"left": "η", "right": "η", "result": "η²", "multiple": 1},
    {"left": "η", "right": "η²", "result": "ν", "multiple": 12},
    {"left": "η²", "right": "η", "result": "ν", "multiple": 12},
]


@dataclass(frozen=True)
class StemElement:
    """Element of the stem group in one degree, as a reduced coordinate vector"""

    degree: int
    vector: tuple

    @property
    def coordinate(self):
        """Single coordinate of an element of a cyclic stem group"""
        return self.vector[0] if self.vector else 0

    def is_zero(self):
        return all(x == 0 for x in self.vector)


class StemTable:
    """
    Stable stems pi_0 .. pi_max with generator names and a bilinear composition product.

    Products are stored on pairs of generator names; ``ι`` (the generator in degree 0) is a two-sided unit and
    every product landing above the top degree is zero. A pair missing from the table falls back to graded
    commutativity, ``a∘b = (-1)^{|a||b|} b∘a``, and is zero when neither order is given.
    """

    def __init__(self, stems=None, products=None, max_degree=STEM_MAX_DEGREE):
        """
        Parameters
        ----------
        stems : list of dict
            Records ``{"degree", "invariant_factors", "generators"}``, one per degree
        products : list of dict
            Records ``{"left", "right", "result", "multiple"}``
        max_degree : int
            Top stem degree
        """
        self.max_degree = max_degree
        self.records = list(stems if stems is not None else DEFAULT_STEMS)
        self.product_records = list(products if products is not None else DEFAULT_PRODUCTS)

        self._groups = {}
        self._names = {}
        for record in self.records:
            degree = int(record["degree"])
            factors = [int(x) for x in record.get("invariant_factors", [])]
            names = list(record.get("generators", []))
            if len(names) != len(factors):
                raise InputError(f"Stem degree {degree} lists {len(factors)} invariant factors but {len(names)} names")
            if not 0 <= degree <= max_degree:
                raise InputError(f"Stem degree {degree} is outside 0..{max_degree}")
            self._groups[degree] = FGAbelianGroup(factors, labels=names)
            for index, name in enumerate(names):
                if name in self._names:
                    raise InputError(f"Stem generator {name} is declared twice")
                self._names[name] = (degree, index)

        if self._groups.get(0) is None or self._groups[0].moduli != (0,):
            raise InputError("Stem degree 0 must be Z, generated by the unit")
        self.unit = self._groups[0].labels[0]

        self._products = {}
        for record in self.product_records:
            left, right = record["left"], record["right"]
            for name in (left, right, record["result"]):
                if name not in self._names:
                    raise InputError(f"Product refers to unknown stem generator {name}")
            result = self.element(record["result"], int(record.get("multiple", 1)))
            if result.degree != self._names[left][0] + self._names[right][0]:
                raise InputError(f"Product {left}∘{right} = {record['result']} does not add degrees")
            self._products[(left, right)] = result

    @classmethod
    def default(cls):
        """The built-in window pi_0 .. pi_5"""
        return cls()

    def to_dict(self):
        return {"stems": self.records, "products": self.product_records}

    # Groups and elements
    def group(self, degree):
        """Stem group in one degree; degrees above the window hold the zero group"""
        if degree < 0:
            raise WindowError(f"Stem degree {degree} is negative")
        if degree > self.max_degree:
            return FGAbelianGroup.trivial()
        return self._groups.get(degree, FGAbelianGroup.trivial())

    def in_window(self, degree):
        return 0 <= degree <= self.max_degree

    @property
    def names(self):
        return list(self._names)

    def degree_of(self, name):
        if name not in self._names:
            raise KeyError(f"Unknown stem generator {name}")
        return self._names[name][0]

    def order_of(self, name):
        """Order of a generator, 0 when it has infinite order"""
        degree, index = self._names[name]
        return self._groups[degree].moduli[index]

    def element(self, name, multiple=1):
        """``multiple`` times the named generator"""
        if name not in self._names:
            raise KeyError(f"Unknown stem generator {name}")
        degree, index = self._names[name]
        group = self._groups[degree]
        return StemElement(degree, group.basis_vector(index, multiple))

    def make(self, degree, vector):
        """Element of degree ``degree`` from raw coordinates, reduced"""
        return StemElement(degree, self.group(degree).reduce(vector))

    def zero(self, degree):
        return StemElement(degree, self.group(degree).zero())

    def basis(self, degree):
        """Named generators of one degree, as (name, element) pairs"""
        group = self.group(degree)
        return [(group.labels[i], StemElement(degree, group.basis_vector(i))) for i in range(group.ngens)]

    def add(self, a, b):
        if a.degree != b.degree:
            raise ValueError(f"Cannot add stems of degrees {a.degree} and {b.degree}")
        return StemElement(a.degree, self.group(a.degree).add(a.vector, b.vector))

    def scale(self, k, a):
        return StemElement(a.degree, self.group(a.degree).scale(k, a.vector))

    def prefixed(self, generator, stem_label):
        """Label of ``generator∘θ``; the unit is dropped on either side"""
        if stem_label == self.unit:
            return generator
        if generator == self.unit:
            return stem_label
        return f"{generator}∘{stem_label}"

    def format(self, element):
        return self.group(element.degree).format_element(element.vector)

    def parse(self, value):
        """Read a stem given as a generator name or as ``{"stem": name, "multiple": k}``"""
        if isinstance(value, str):
            return self.element(value)
        if isinstance(value, dict) and "stem" in value:
            return self.element(value["stem"], int(value.get("multiple", 1)))
        raise InputError(f"Could not read stem {value!r}")

    # Products
    def _generator_product(self, left, right):
        if left == self.unit:
            return self.element(right)
        if right == self.unit:
            return self.element(left)
        degree = self.degree_of(left) + self.degree_of(right)
        if degree > self.max_degree:
            return StemElement(degree, ())
        if (left, right) in self._products:
            return self._products[(left, right)]
        if (right, left) in self._products:
            sign = -1 if (self.degree_of(left) * self.degree_of(right)) % 2 else 1
            return self.scale(sign, self._products[(right, left)])
        return self.zero(degree)

    def compose(self, a, b):
        """
        Composite ``a∘b``, extended bilinearly from the generator products

        Parameters
        ----------
        a, b : StemElement

        Returns
        -------
        StemElement of degree ``a.degree + b.degree`` (an element of the zero group above the window)
        """
        degree = a.degree + b.degree
        result = self.zero(degree)
        for (lname, _), x in zip(self.basis(a.degree), a.vector):
            for (rname, _), y in zip(self.basis(b.degree), b.vector):
                if x and y:
                    result = self.add(result, self.scale(x * y, self._generator_product(lname, rname)))
        return result

    def factorization(self, name):
        """A pair of generators whose product is exactly ``name``, or None for an indecomposable generator"""
        target = self.element(name)
        for (left, right), value in self._products.items():
            if value == target and left != self.unit and right != self.unit:
                return left, right
        return None

    def indecomposables(self):
        """Generators of positive degree that are not a product of two others"""
        return [name for name in self._names if self.degree_of(name) > 0 and self.factorization(name) is None]

    def validate(self):
        """
        Check unit, bilinearity and associativity of the product on all generator triples

        Returns
        -------
        ValidationReport
        """
        report = ValidationReport(subject="stem table")
        degrees = range(self.max_degree + 1)

        for name in self.names:
            element = self.element(name)
            unit = self.element(self.unit)
            report.checks += 1
            if self.compose(unit, element) != element or self.compose(element, unit) != element:
                report.add("unit", f"ι is not a unit for {name}", generator=name)

        for left, right in itertools.product(self.names, repeat=2):
            product = self._generator_product(left, right)
            for name in (left, right):
                order = self.order_of(name)
                report.checks += 1
                if order and not self.scale(order, product).is_zero():
                    report.add(
                        "bilinearity",
                        f"{left}∘{right} = {self.format(product)} is not killed by the order {order} of {name}",
                        degree=product.degree,
                        generator=name,
                    )

        for i, j, k in itertools.product(degrees, repeat=3):
            if i + j + k > self.max_degree:
                continue
            for (a_name, a), (b_name, b), (c_name, c) in itertools.product(self.basis(i), self.basis(j), self.basis(k)):
                report.checks += 1
                lhs = self.compose(self.compose(a, b), c)
                rhs = self.compose(a, self.compose(b, c))
                if lhs != rhs:
                    report.add(
                        "associativity",
                        f"({a_name}∘{b_name})∘{c_name} = {self.format(lhs)} but {a_name}∘({b_name}∘{c_name}) = "
                        f"{self.format(rhs)}",
                        degree=i + j + k,
                        witness=f"{a_name},{b_name},{c_name}",
                    )
        return report


_DEFAULT_TABLE = None


def _default_table():
    global _DEFAULT_TABLE  # pylint: disable=global-statement
    if _DEFAULT_TABLE is None:
        _DEFAULT_TABLE = StemTable.default()
    return _DEFAULT_TABLE


def stem_group(degree, stems=None):
    """
    Stable stem group in one degree

    Parameters
    ----------
    degree : int
        Stem degree, 0 .. max_degree
    stems : StemTable
        Table to read from. Default: the built-in window

    Returns
    -------
    FGAbelianGroup
    """
    stems = stems or _default_table()
    if not stems.in_window(degree):
        raise WindowError(f"Stem degree {degree} is outside the window 0..{stems.max_degree}")
    return stems.group(degree)


def compose(a, b, stems=None):
    """Composite ``a∘b`` of two stem elements (see :meth:`StemTable.compose`)"""
    return (stems or _default_table()).compose(a, b)
