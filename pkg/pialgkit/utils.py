"""Utility functions and exceptions for pialgkit"""

import dataclasses
import re

import numpy as np

__all__ = [
    "PiAlgError",
    "StructuralError",
    "WindowError",
    "ValidationError",
    "LiftError",
    "InputError",
    "format_degree",
    "parse_degree",
    "format_group",
    "json_serializer",
]


class PiAlgError(Exception):
    """Base class for all pialgkit errors"""


class StructuralError(PiAlgError, ValueError):
    """Objects that do not fit together: shapes, bases, ambient groups"""


class WindowError(PiAlgError, IndexError):
    """A degree outside the window of the object it was asked of"""


class ValidationError(PiAlgError):
    """A validating constructor rejected its input; the report says why"""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class LiftError(PiAlgError, RuntimeError):
    """A degreewise lifting system had no integer solution"""


class InputError(PiAlgError):
    """Problems with an input document"""

    def __init__(self, message, line=None, column=None):
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)
        self.line = line
        self.column = column


_DEGREE_PATTERN = re.compile(r"^\s*n\s*(?:([+-])\s*(\d+))?\s*$")


def format_degree(degree):
    """
    Render a relative degree with the symbolic anchor ``n``

    Parameters
    ----------
    degree : int
        Degree relative to the anchor (``n`` is stored as 0)

    Returns
    -------
    str, eg ``n``, ``n+2``, ``n-1``
    """
    degree = int(degree)
    if degree == 0:
        return "n"
    return f"n{degree:+d}"


def parse_degree(value):
    """
    Read a degree given either as an integer or as a string like ``n+2``

    Parameters
    ----------
    value : int or str
        Degree to parse

    Returns
    -------
    int
    """
    if isinstance(value, (bool, float)):
        raise InputError(f"Degree {value!r} is not an integer or n-relative string")
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, str):
        stripped = value.strip()
        if re.fullmatch(r"[+-]?\d+", stripped):
            return int(stripped)
        match = _DEGREE_PATTERN.match(stripped)
        if match:
            sign, amount = match.groups()
            if sign is None:
                return 0
            return int(amount) if sign == "+" else -int(amount)
    raise InputError(f"Could not parse degree {value!r}")


def format_group(rank, torsion):
    """
    Human-readable name of a finitely generated abelian group

    Parameters
    ----------
    rank : int
        Number of infinite cyclic summands
    torsion : list of int
        Invariant factors

    Returns
    -------
    str, eg ``0``, ``Z``, ``Z/2``, ``Z^2 + Z/2 + Z/4``, ``(Z/2)^2``
    """
    parts = []
    if rank == 1:
        parts.append("Z")
    elif rank > 1:
        parts.append(f"Z^{rank}")

    # Collapse repeated invariant factors
    index = 0
    torsion = list(torsion)
    while index < len(torsion):
        factor = torsion[index]
        count = 1
        while index + count < len(torsion) and torsion[index + count] == factor:
            count += 1
        parts.append(f"Z/{factor}" if count == 1 else f"(Z/{factor})^{count}")
        index += count

    if not parts:
        return "0"
    return " + ".join(parts)


def json_serializer(obj):
    """Function describing how things should be serialized in JSON.
    Numpy integers become Python integers, arrays become nested lists, dataclasses become dictionaries,
    objects that know how to describe themselves use ``to_dict`` while all others use __dict__"""

    if isinstance(obj, np.integer):
        return int(obj)

    if isinstance(obj, np.ndarray):
        return [json_serializer(x) if isinstance(x, np.ndarray) else int(x) for x in obj]

    if hasattr(obj, "to_dict"):
        return obj.to_dict()

    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return dataclasses.asdict(obj)

    if isinstance(obj, (set, frozenset)):
        return sorted(obj)

    return obj.__dict__
