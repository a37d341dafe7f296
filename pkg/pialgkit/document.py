"""Input documents: JSON descriptions of stems, algebras, modules, maps, resolutions and brackets, joined by name"""

__all__ = ["InputDocument", "load_document"]

import json
import os

from . import DEFAULT_RESOLUTION_LENGTH, logger
from .abelian import FGAbelianGroup
from .pialg import (
    PiMap,
    PiModule,
    StablePiAlgebra,
    as_module,
    free_algebra,
    loop,
    loop_coefficients,
    restrict_scalars,
    validate_algebra,
    validate_map,
)
from .reports import ValidationReport
from .resolution import FreeGradedModule, FreeModuleMap, FreeResolution, build_resolution, validate_resolution
from .stems import StemTable
from .toda import BracketTriple, bracket
from .utils import InputError, PiAlgError, StructuralError, parse_degree

SECTIONS = ("stems", "products", "algebras", "modules", "maps", "resolutions", "brackets", "realizability")


def _require(record, key, where):
    if not isinstance(record, dict):
        raise InputError(f"{where}: expected an object, got {type(record).__name__}")
    if key not in record:
        raise InputError(f"{where}: missing '{key}'")
    return record[key]


def _window(value, where):
    if not isinstance(value, list) or len(value) != 2:
        raise InputError(f"{where}: window must be a [low, high] pair")
    return parse_degree(value[0]), parse_degree(value[1])


class InputDocument:
    """
    A parsed input document.

    Objects are built on first use and cached, so a document may refer to objects defined anywhere in it.
    Problems with the document (missing keys, unknown names, matrices of the wrong shape) raise
    :class:`~pialgkit.utils.InputError`; mathematical problems are left to :meth:`validate`.
    """

    def __init__(self, data, source=""):
        """
        Parameters
        ----------
        data : dict
            Decoded JSON document
        source : str
            Where the document came from, for messages
        """
        if not isinstance(data, dict):
            raise InputError("The document must be a JSON object")
        unknown = sorted(set(data) - set(SECTIONS))
        if unknown:
            raise InputError(f"Unknown sections {unknown}; expected some of {list(SECTIONS)}")
        self.data = data
        self.source = source
        self._cache = {}
        self._building = set()

        try:
            if "stems" in data or "products" in data:
                self.stems = StemTable(data.get("stems"), data.get("products"))
            else:
                self.stems = StemTable.default()
        except (KeyError, TypeError, ValueError) as e:
            raise InputError(f"stems: {e}") from e

    @classmethod
    def from_text(cls, text, source="<string>"):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise InputError(f"Invalid JSON in {source}: {e.msg}", line=e.lineno, column=e.colno) from e
        return cls(data, source=source)

    @classmethod
    def from_file(cls, path):
        if not os.path.exists(path):
            raise InputError(f"No such document: {path}")
        try:
            with open(path, "r", encoding="utf-8") as f:
                text = f.read()
        except UnicodeDecodeError as e:
            raise InputError(f"{path} is not UTF-8 text: {e.reason} at byte {e.start}") from e
        return cls.from_text(text, source=str(path))

    # Names
    def names(self, section):
        value = self.data.get(section, {})
        return list(value) if isinstance(value, dict) else []

    def _record(self, section, name):
        records = self.data.get(section, {})
        if not isinstance(records, dict) or name not in records:
            raise InputError(f"Unknown name '{name}' in {section}")
        return records[name]

    def _build(self, section, name, builder):
        key = (section, name)
        if key in self._cache:
            return self._cache[key]
        if key in self._building:
            raise InputError(f"{section}.{name} refers to itself")
        self._building.add(key)
        try:
            obj = builder(self._record(section, name), f"{section}.{name}", name)
        except InputError:
            raise
        except (PiAlgError, AttributeError, KeyError, TypeError, ValueError, IndexError) as e:
            raise InputError(f"{section}.{name}: {e}") from e
        finally:
            self._building.discard(key)
        self._cache[key] = obj
        return obj

    # Objects
    def algebra(self, name):
        return self._build("algebras", name, self._make_algebra)

    def module(self, name):
        return self._build("modules", name, self._make_module)

    def graded(self, name):
        """An algebra or a module, whichever section defines the name"""
        if name in self.names("algebras"):
            return self.algebra(name)
        if name in self.names("modules"):
            return self.module(name)
        raise InputError(f"Unknown algebra or module '{name}'")

    def map(self, name):
        return self._build("maps", name, self._make_map)

    def resolution(self, name):
        return self._build("resolutions", name, self._make_resolution)

    def bracket(self, name):
        """The bracket coset of that name together with its recorded readings"""
        return self._build("brackets", name, self._make_bracket)

    def realizability(self):
        """List of (map name, source bracket name, target bracket name) checks"""
        entries = self.data.get("realizability", [])
        if not isinstance(entries, list):
            raise InputError("realizability: expected a list")
        out = []
        for i, entry in enumerate(entries):
            where = f"realizability[{i}]"
            out.append((_require(entry, "map", where), _require(entry, "source", where), _require(entry, "target", where)))
        return out

    def resolution_for(self, algebra):
        """Name of the first resolution of an algebra equal to ``algebra``"""
        for name in self.names("resolutions"):
            if self.resolution(name).algebra == algebra:
                return name
        raise InputError(f"No resolution of {algebra.name} in the document")

    # Builders
    def _groups(self, record, where):
        groups = {}
        entries = record.get("groups", {})
        if not isinstance(entries, dict):
            raise InputError(f"{where}.groups: expected an object keyed by degree")
        for key, entry in entries.items():
            factors = _require(entry, "invariant_factors", f"{where}.groups.{key}")
            labels = entry.get("generators")
            groups[parse_degree(key)] = FGAbelianGroup([int(x) for x in factors], labels=labels)
        return groups

    def _action(self, record, where):
        entries = record.get("action", [])
        if not isinstance(entries, list):
            raise InputError(f"{where}.action: expected a list")
        action = {}
        for i, entry in enumerate(entries):
            at = f"{where}.action[{i}]"
            degree, stem = parse_degree(_require(entry, "degree", at)), _require(entry, "stem", at)
            action[(degree, stem)] = _require(entry, "matrix", at)
        return action

    def _make_graded(self, record, where, name, base=None):
        if "loop" in record:
            inner = self.graded(record["loop"])
            times = int(record.get("times", 1))
            # a zero-fold loop is a renamed copy, never the cached object itself
            looped = loop(inner, times) if times else inner._replace(inner.window, inner.groups, inner.action)
            looped.name = name
            return looped if base is None else as_module(looped, base=base, name=name)
        if "free" in record:
            window = _window(record["window"], where) if "window" in record else None
            algebra = free_algebra(
                parse_degree(record["free"]),
                window,
                stems=self.stems,
                generator=record.get("generator", self.stems.unit),
                name=name,
            )
            return algebra if base is None else as_module(algebra, base=base, name=name)
        window = _window(_require(record, "window", where), where)
        groups = self._groups(record, where)
        action = self._action(record, where)
        if base is None:
            return StablePiAlgebra(window, groups, action, stems=self.stems, name=name)
        return PiModule(window, groups, action, stems=self.stems, name=name, base=base)

    def _make_algebra(self, record, where, name):
        return self._make_graded(record, where, name)

    def _make_module(self, record, where, name):
        if "restrict" in record:
            module = restrict_scalars(self.module(record["restrict"]), self.map(_require(record, "along", where)))
            module.name = name
            return module
        base = self.algebra(_require(record, "base", where))
        return self._make_graded(record, where, name, base=base)

    def _make_map(self, record, where, name):
        over = self.map(record["over"]) if record.get("over") else None
        if "identity" in record:
            obj = self.graded(record["identity"])
            if over is None and isinstance(obj, PiModule):
                over = PiMap.identity(obj.base)
            phi = PiMap.identity(obj, over=over)
            phi.name = name
            return phi
        if "loop" in record:
            inner = self.map(record["loop"])
            times = int(record.get("times", 1))
            if over is not None and over is inner and not isinstance(inner.source, PiModule):
                phi = loop_coefficients(inner, times)
            else:
                phi = loop(inner, times)
                phi.over = over or inner.over
            phi.name = name
            return phi
        source = self.graded(_require(record, "source", where))
        target = self.graded(_require(record, "target", where))
        components = {parse_degree(k): v for k, v in record.get("components", {}).items()}
        return PiMap(source, target, components, over=over, name=name)

    def _make_resolution(self, record, where, name):
        algebra = self.algebra(_require(record, "algebra", where))
        if "build" in record:
            resolution = build_resolution(algebra, int(record["build"] or DEFAULT_RESOLUTION_LENGTH))
            resolution.name = name
            return resolution

        levels = _require(record, "levels", where)
        modules = []
        for k, level in enumerate(levels):
            generators = [
                (_require(g, "name", f"{where}.levels[{k}]"), parse_degree(_require(g, "degree", f"{where}.levels[{k}]")))
                for g in level
            ]
            modules.append(FreeGradedModule(generators, self.stems))
        differentials = []
        for k, images in enumerate(record.get("differentials", []), start=1):
            if k >= len(modules):
                raise InputError(f"{where}: differential ∂_{k} has no level V_{k}")
            differentials.append(FreeModuleMap.from_terms(modules[k], modules[k - 1], images))
        augmentation = record.get("augmentation", {})
        return FreeResolution(algebra, modules, differentials, augmentation, name=name)

    def _make_bracket(self, record, where, name):
        h = _require(record, "h", where)
        algebra = self.algebra(_require(h, "algebra", f"{where}.h"))
        triple = BracketTriple(
            self.stems.parse(_require(record, "f", where)),
            self.stems.parse(_require(record, "g", where)),
            algebra,
            parse_degree(_require(h, "degree", f"{where}.h")),
            tuple(_require(h, "element", f"{where}.h")),
            name=name,
        )
        coset = bracket(triple, _require(record, "representative", where))
        recorded = {label: [tuple(e) for e in elements] for label, elements in record.get("readings", {}).items()}
        return coset, recorded

    # Validation
    def validate(self):
        """
        Run every validator on every object of the document

        Returns
        -------
        list of ValidationReport
        """
        reports = []
        stems = self.stems.validate()
        reports.append(stems)
        for name in self.names("algebras"):
            reports.append(_named(validate_algebra(self.algebra(name)), f"algebra {name}"))
        for name in self.names("modules"):
            reports.append(_named(validate_algebra(self.module(name)), f"module {name}"))
        for name in self.names("maps"):
            phi = self.map(name)
            report = _named(validate_map(phi), f"map {name}")
            if phi.over is not None:
                report.extend(_base_report(phi))
            reports.append(report)
        for name in self.names("resolutions"):
            resolution = self.resolution(name)
            try:
                report = validate_resolution(resolution)
            except StructuralError as e:
                # a broken algebra can make the realized maps themselves ill-defined
                report = ValidationReport(checks=1)
                report.add("structure", str(e))
            reports.append(_named(report, f"resolution {name}"))
        for name in self.names("brackets"):
            self.bracket(name)
        logger.debug(f"{self.source}: ran {sum(r.checks for r in reports)} checks")
        return reports


def _named(report, subject):
    report.subject = subject
    return report


def _base_report(phi):
    # a coefficient map must go between modules over the source and target of the algebra map
    report = ValidationReport(subject=phi.name)
    for module, algebra in ((phi.source, phi.over.source), (phi.target, phi.over.target)):
        report.checks += 1
        if isinstance(module, PiModule) and module.base != algebra:
            report.add("base", f"{module.name} is not a module over {algebra.name}", generator=module.name)
    return report


def load_document(path):
    """Read an input document from a JSON file (see :class:`InputDocument`)"""
    return InputDocument.from_file(path)
