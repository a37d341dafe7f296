# Testing for cli.py

import json
import logging
import os

import pytest

from pialgkit import logger
from pialgkit.cli import build_parser, main
from pialgkit.example import example_path
from pialgkit.utils import InputError

try:
    import mock
except ImportError:
    from unittest import mock

GOLDEN_DIR = os.path.join(os.path.dirname(__file__), "goldens")
GOLDENS = sorted(f for f in os.listdir(GOLDEN_DIR) if f.endswith(".json"))


@pytest.fixture(autouse=True)
def reset_level():
    yield
    logger.setLevel(logging.INFO)


def _run(tmp_path, *args, path=None):
    out = tmp_path / "report.json"
    code = main([args[0], path or example_path(), *args[1:], "--json", str(out)])
    data = json.loads(out.read_text(encoding="utf-8")) if out.exists() else None
    return code, data


def _column(data, name):
    return [row[name] for row in data["rows"]]


def _mutated_document(tmp_path):
    with open(example_path(), encoding="utf-8") as f:
        data = json.load(f)
    for entry in data["algebras"]["Lambda"]["action"]:
        if entry["degree"] == "n+1":
            entry["matrix"] = [[1]]
    document = {"algebras": data["algebras"]}
    path = tmp_path / "broken.json"
    path.write_text(json.dumps(document, ensure_ascii=False), encoding="utf-8")
    return str(path)


@pytest.mark.parametrize("golden", GOLDENS)
def test_goldens(tmp_path, golden):
    with open(os.path.join(GOLDEN_DIR, golden), encoding="utf-8") as f:
        expected = json.load(f)
    code, data = _run(tmp_path, *expected["args"])
    assert code == 0
    for name, values in expected["columns"].items():
        assert _column(data, name) == values, name
    for name, value in expected["verdicts"].items():
        assert data["verdicts"][name] == value, name


def test_validate(tmp_path, capsys):
    code, data = _run(tmp_path, "validate")
    assert code == 0
    assert data["command"] == "validate"
    assert data["verdicts"] == {"valid": True}
    assert all(_column(data, "valid"))
    assert data["sections"] == []
    assert "valid: True" in capsys.readouterr().out


def test_validate_failure(tmp_path):
    code, data = _run(tmp_path, "validate", path=_mutated_document(tmp_path))
    assert code == 2
    assert data["verdicts"] == {"valid": False}
    violations = data["sections"][0]
    assert violations["command"] == "violations"
    lambda_kinds = {row["kind"] for row in violations["rows"] if row["subject"] == "algebra Lambda"}
    assert "bilinearity" in lambda_kinds


@pytest.mark.parametrize(
    "args",
    [
        ["validate"],
        ["frobnicate"],
        ["arrow"],
        ["bracket"],
        ["arrow", "--map", "nothing"],
        ["cohomology", "--algebra", "nothing"],
        ["obstruct", "--map", "phi", "--stages", "two"],
    ],
)
def test_usage_and_document_errors(tmp_path, args):
    path = example_path() if args != ["validate"] else str(tmp_path / "missing.json")
    assert main([args[0], path, *args[1:]]) == 1


def test_no_command():
    assert main([]) == 1


def test_malformed_json(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{\n  "algebras": {,}\n}', encoding="utf-8")
    assert main(["validate", str(path)]) == 1


def test_binary_input(tmp_path):
    path = tmp_path / "binary.json"
    path.write_bytes(b"\xff\xfe{}")
    assert main(["validate", str(path)]) == 1


@mock.patch("pialgkit.cli.InputDocument.from_file", side_effect=InputError("bad token", line=3, column=7))
def test_reader_error(mock_from_file):
    assert main(["validate", "anything.json"]) == 1
    mock_from_file.assert_called_once_with("anything.json")


def test_cohomology_options(tmp_path):
    code, data = _run(tmp_path, "cohomology", "--module", "Zero")
    assert code == 0
    assert _column(data, "group") == ["0"] * 6
    assert data["notes"]

    code, data = _run(tmp_path, "cohomology", "--max-degree", "2")
    assert code == 0
    assert _column(data, "group") == ["Z/2", "0", "0"]
    assert data["notes"] == []


def test_arrow(tmp_path):
    code, data = _run(tmp_path, "arrow", "--map", "id_Lambda")
    assert code == 0
    assert _column(data, "group") == ["Z/2", "0", "0", "Z/2", "0", "0"]

    code, data = _run(tmp_path, "arrow", "--map", "phi")
    les = data["sections"][0]
    assert les["command"] == "les"
    assert les["verdicts"] == {"exact": True}
    assert les["rows"][-1]["term"] == "H^6_φ"
    assert _column(data, "image of ξ")[0] == "Z/2"


def test_obstruct(tmp_path):
    code, data = _run(tmp_path, "obstruct", "--map", "id_S")
    assert code == 0
    assert data["verdicts"] == {"verdict": "REALIZABLE"}

    code, data = _run(tmp_path, "obstruct", "--map", "psi", "--stages", "0")
    assert code == 0
    assert data["rows"] == []
    assert data["verdicts"] == {"verdict": "UNDECIDED"}
    assert _column(data["sections"][0], "verdict") == ["CONSISTENT"]

    code, data = _run(tmp_path, "obstruct", "--map", "phi")
    checks = data["sections"][0]
    assert set(_column(checks, "verdict")) == {"CONTRADICTION"}
    assert checks["rows"][0]["reading"] == "phi: eta_2_alpha → eta_2_eta [coset]"


def test_bracket_without_checks(tmp_path):
    code, data = _run(tmp_path, "bracket", "--bracket", "eta_2_zero")
    assert code == 0
    assert _column(data, "elements") == ["{0, 12ν}"]
    assert data["verdicts"]["verdict"] == "CONSISTENT"


def test_json_is_deterministic(tmp_path):
    first, second = tmp_path / "first.json", tmp_path / "second.json"
    for out in (first, second):
        assert main(["arrow", example_path(), "--map", "phi", "--json", str(out)]) == 0
    assert first.read_bytes() == second.read_bytes()


@pytest.mark.parametrize("flag, level", [("--verbose", logging.DEBUG), ("--quiet", logging.WARNING)])
def test_log_level(flag, level):
    assert main(["validate", example_path(), flag]) == 0
    assert logger.level == level


def test_parser():
    args = build_parser().parse_args(["obstruct", "doc.json", "--map", "phi"])
    assert args.stages == 2
    assert args.json_path is None
    with pytest.raises(InputError):
        build_parser().parse_args(["validate", "doc.json", "--verbose", "--quiet"])
