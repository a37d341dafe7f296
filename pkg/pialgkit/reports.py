"""Report containers: validation verdicts with witnesses, and tabular results with a JSON mirror"""

__all__ = ["Violation", "ValidationReport", "Report", "group_row"]

import json
from dataclasses import asdict, dataclass, field

import pandas as pd
from astropy.table import Table as AstropyTable

from .utils import json_serializer


@dataclass
class Violation:
    """One failed check, located by kind, level, degree and generator, with a witness when there is one"""

    kind: str
    message: str
    degree: int = None
    level: int = None
    generator: str = None
    witness: str = None


@dataclass
class ValidationReport:
    """Outcome of a validator: a verdict plus every violation found"""

    subject: str = ""
    violations: list = field(default_factory=list)
    checks: int = 0

    @property
    def valid(self):
        return not self.violations

    def __bool__(self):
        return self.valid

    def add(self, kind, message, **kwargs):
        self.violations.append(Violation(kind, message, **kwargs))

    def extend(self, other):
        self.violations.extend(other.violations)
        self.checks += other.checks
        return self

    def kinds(self):
        return sorted({v.kind for v in self.violations})

    def to_dict(self):
        return {
            "subject": self.subject,
            "valid": self.valid,
            "checks": self.checks,
            "violations": [asdict(v) for v in self.violations],
        }

    def table(self, fmt="astropy"):
        """Violations as a table (see :meth:`Report.table`)"""
        rows = [asdict(v) for v in self.violations]
        columns = ["kind", "level", "degree", "generator", "message", "witness"]
        return _handle_format(rows, columns, fmt)


def _cell(value):
    # Astropy columns need scalars of one type
    if value is None:
        return ""
    if isinstance(value, (list, tuple)):
        return ",".join(str(v) for v in value)
    return str(value)


def _plain(value):
    # Plain JSON types only, so that a report equals its own JSON mirror
    return json.loads(json.dumps(value, ensure_ascii=False, default=json_serializer))


def _handle_format(rows, columns, fmt):
    # Build the requested output type from a list of row dictionaries
    if fmt.lower() in ("astropy", "table"):
        if len(rows) > 0:
            data = [tuple(_cell(row.get(c)) for c in columns) for row in rows]
            results = AstropyTable(rows=data, names=columns)
        else:
            results = AstropyTable(names=columns, dtype=[str] * len(columns))
    elif fmt.lower() == "pandas":
        results = pd.DataFrame([[row.get(c) for c in columns] for row in rows], columns=columns)
    else:
        results = rows

    return results


def group_row(degree, group, **extra):
    """Row describing one group: its degree, name, rank and invariant factors"""
    row = {"degree": degree, "group": str(group), "rank": group.rank, "torsion": list(group.torsion)}
    row.update(extra)
    return row


class Report:
    """
    Result of one command: a titled table of rows, named verdicts, free-form notes and nested sections.

    Every value is a plain JSON type so that :meth:`to_json` followed by :meth:`from_json` gives back an equal report.
    """

    def __init__(self, command, title="", columns=None, rows=None, verdicts=None, notes=None, sections=None):
        self.command = command
        self.title = title
        self.columns = list(columns or [])
        self.rows = _plain(list(rows or []))
        self.verdicts = _plain(dict(verdicts or {}))
        self.notes = _plain(list(notes or []))
        self.sections = list(sections or [])

    def add_row(self, row):
        for key in row:
            if key not in self.columns:
                self.columns.append(key)
        self.rows.append(_plain(row))

    def add_section(self, section):
        self.sections.append(section)
        return section

    def walk(self):
        """This report followed by every nested section, depth first"""
        yield self
        for section in self.sections:
            yield from section.walk()

    def table(self, fmt="astropy"):
        """
        Rows of this report

        Parameters
        ----------
        fmt : str
            Format to return results in (pandas, astropy/table, default). Default is astropy table

        Returns
        -------
        astropy.table.Table, pandas.DataFrame or list of dict
        """
        return _handle_format(self.rows, self.columns, fmt)

    def render(self):
        """Human-readable text: title, table, verdicts and notes of every section"""
        lines = []
        for report in self.walk():
            if report.title:
                lines.append(report.title)
                lines.append("-" * len(report.title))
            if report.rows:
                lines.extend(report.table().pformat(max_lines=-1, max_width=-1))
            for name, value in report.verdicts.items():
                lines.append(f"{name}: {value}")
            for note in report.notes:
                lines.append(f"note: {note}")
            lines.append("")
        return "\n".join(lines)

    def to_dict(self):
        return {
            "command": self.command,
            "title": self.title,
            "columns": self.columns,
            "rows": self.rows,
            "verdicts": self.verdicts,
            "notes": self.notes,
            "sections": [s.to_dict() for s in self.sections],
        }

    def to_json(self):
        return json.dumps(self.to_dict(), indent=4, ensure_ascii=False, default=json_serializer)

    @classmethod
    def from_dict(cls, data):
        return cls(
            data["command"],
            title=data.get("title", ""),
            columns=data.get("columns"),
            rows=data.get("rows"),
            verdicts=data.get("verdicts"),
            notes=data.get("notes"),
            sections=[cls.from_dict(s) for s in data.get("sections", [])],
        )

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))

    def __eq__(self, other):
        if not isinstance(other, Report):
            return NotImplemented
        return self.to_dict() == other.to_dict()

    def __repr__(self):
        return f"Report({self.command!r}, {self.title!r}, {len(self.rows)} rows, {len(self.sections)} sections)"
