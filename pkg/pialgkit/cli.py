"""Command-line front end: read an input document, run one computation, print a report and write its JSON mirror"""

__all__ = ["main", "build_parser", "cmd_validate", "cmd_cohomology", "cmd_arrow", "cmd_obstruct", "cmd_bracket"]

import argparse
import logging
from dataclasses import asdict

from . import DEFAULT_MAX_DEGREE, EXIT_FAILURE, EXIT_OK, EXIT_PARSE, __version__, logger
from .cohomology import (
    arrow_cochain_complex,
    assemble_les,
    cochain_complex,
    cohomology_groups,
    loop_module,
    obstruction_report,
)
from .document import InputDocument
from .pialg import PiModule, as_module, loop_coefficients
from .reports import Report, group_row
from .resolution import lift_map
from .toda import bracket_report, check_realizability
from .utils import InputError, PiAlgError


DEFAULT_STAGES = 2


class _Parser(argparse.ArgumentParser):
    # Usage errors share the exit code of a bad document
    def error(self, message):
        raise InputError(f"{self.prog}: {message}")


def build_parser():
    parser = _Parser(prog="pialgkit", description="Cohomology of truncated stable Pi-algebras and of their maps")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("path", help="Input document (JSON)")
    common.add_argument("--json", dest="json_path", default=None, help="Write the machine-readable report here")
    noise = common.add_mutually_exclusive_group()
    noise.add_argument("--verbose", action="store_true", help="Debug logging and progress bars")
    noise.add_argument("--quiet", action="store_true", help="Warnings and errors only")

    subparsers = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    validate = subparsers.add_parser("validate", parents=[common], help="Check every object of a document")
    validate.set_defaults(func=cmd_validate)

    cohomology = subparsers.add_parser("cohomology", parents=[common], help="Cohomology of an algebra with coefficients")
    cohomology.add_argument("--algebra", default=None, help="Algebra to resolve. Default: the first one in the document")
    cohomology.add_argument("--module", default=None, help="Coefficient module. Default: the loop of the algebra")
    cohomology.add_argument("--resolution", default=None, help="Resolution to use. Default: the first of the algebra")
    cohomology.add_argument("--max-degree", type=int, default=None, help="Top cohomological degree")
    cohomology.set_defaults(func=cmd_cohomology)

    arrow = subparsers.add_parser("arrow", parents=[common], help="Cohomology of a map and its long exact sequence")
    _map_arguments(arrow)
    arrow.add_argument("--coefficients", default=None, help="Coefficient map over the map. Default: its loop")
    arrow.add_argument("--max-degree", type=int, default=None, help="Top cohomological degree")
    arrow.set_defaults(func=cmd_arrow)

    obstruct = subparsers.add_parser("obstruct", parents=[common], help="Obstructions to realizing a map")
    _map_arguments(obstruct)
    obstruct.add_argument("--stages", type=int, default=DEFAULT_STAGES, help="Number of obstruction stages")
    obstruct.set_defaults(func=cmd_obstruct)

    bracket = subparsers.add_parser("bracket", parents=[common], help="A bracket coset and its realizability checks")
    bracket.add_argument("--bracket", required=True, help="Bracket name")
    bracket.set_defaults(func=cmd_bracket)
    return parser


def _map_arguments(parser):
    parser.add_argument("--map", required=True, help="Algebra map name")
    parser.add_argument("--source-resolution", default=None, help="Default: the first resolution of the source")
    parser.add_argument("--target-resolution", default=None, help="Default: the first resolution of the target")


def _resolutions(document, phi, args):
    source = document.resolution(args.source_resolution or document.resolution_for(phi.source))
    target = document.resolution(args.target_resolution or document.resolution_for(phi.target))
    return source, target


def _bracket_checks(document, involving):
    # realizability entries matching the predicate, evaluated
    checks = []
    for map_name, source_name, target_name in document.realizability():
        if not involving(map_name, source_name, target_name):
            continue
        source, _ = document.bracket(source_name)
        target, recorded = document.bracket(target_name)
        for check in check_realizability(document.map(map_name), source, target, recorded):
            check.label = f"{map_name}: {source_name} → {target_name} [{check.label}]"
            checks.append(check)
    return checks


# -------------------------------------------------------------------------------------------------------------------
# Commands. Each returns (report, failed).
def cmd_validate(document, args):
    """Run every validator; fails when any object does not pass"""
    reports = document.validate()
    report = Report("validate", title=f"Validation of {document.source}", columns=["subject", "checks", "valid"])
    violations = Report("violations", title="Violations")
    for result in reports:
        report.add_row({"subject": result.subject, "checks": result.checks, "valid": result.valid})
        for violation in result.violations:
            violations.add_row({"subject": result.subject, **asdict(violation)})
    if violations.rows:
        report.add_section(violations)
    failed = any(not r.valid for r in reports)
    report.verdicts["valid"] = not failed
    return report, failed


def cmd_cohomology(document, args):
    """Cohomology ``H^0 .. H^k`` of an algebra with coefficients in a module"""
    algebra_name = args.algebra or next(iter(document.names("algebras")), None)
    if algebra_name is None:
        raise InputError("The document has no algebras")
    algebra = document.algebra(algebra_name)
    resolution = document.resolution(args.resolution or document.resolution_for(algebra))
    if args.module:
        module = document.graded(args.module)
        if not isinstance(module, PiModule):
            module = as_module(module, base=algebra)
    else:
        module = loop_module(algebra)

    complex_ = cochain_complex(resolution, module)
    max_degree = args.max_degree if args.max_degree is not None else min(DEFAULT_MAX_DEGREE, resolution.length)
    title = f"H^*({algebra.name}; {module.name}) from {resolution.name}"
    report = Report("cohomology", title=title, columns=["degree", "group", "rank", "torsion", "cochains"])
    for n, group in enumerate(cohomology_groups(complex_, max_degree)):
        report.add_row(group_row(n, group, cochains=str(complex_.group(n))))
    if max_degree >= resolution.length:
        report.notes.append(f"degrees from {resolution.length} up see only the levels built in {resolution.name}")
    return report, False


def cmd_arrow(document, args):
    """Cohomology of a map, the groups of its long exact sequence, and the exactness verdict"""
    phi = document.map(args.map)
    tau = document.map(args.coefficients) if args.coefficients else loop_coefficients(phi)
    source, target = _resolutions(document, phi, args)
    lift = lift_map(phi, source, target)
    max_degree = args.max_degree if args.max_degree is not None else source.length
    cone = arrow_cochain_complex(source, target, lift, tau, max_degree=max_degree)
    les = assemble_les(cone)

    columns = ["degree", "group", "rank", "torsion", "H(X;M0)", "H(Y;M1)", "H(X;M1)", "image of ξ"]
    report = Report("arrow", title=f"H^*_φ({phi.name}; {tau.name})", columns=columns)
    for n, group in enumerate(cohomology_groups(cone, max_degree)):
        report.add_row(
            group_row(
                n,
                group,
                **{
                    "H(X;M0)": str(cone.source_complex.homology(n)),
                    "H(Y;M1)": str(cone.target_complex.homology(n)),
                    "H(X;M1)": str(cone.mixed_complex.homology(n)),
                    "image of ξ": str(les.images[n]),
                },
            )
        )
    section = report.add_section(les.to_report())
    report.verdicts["LES exact"] = section.verdicts["exact"]
    return report, not section.verdicts["exact"]


def cmd_obstruct(document, args):
    """Obstruction host groups of a map together with the verdicts of its bracket checks"""
    phi = document.map(args.map)
    source, target = _resolutions(document, phi, args)
    checks = _bracket_checks(document, lambda name, *_: name == args.map)
    result = obstruction_report(phi, source, target, args.stages, bracket_checks=checks, verbose=args.verbose)
    return result.to_report(), False


def cmd_bracket(document, args):
    """A bracket, its indeterminacy and readings, and every realizability check it takes part in"""
    coset, recorded = document.bracket(args.bracket)
    checks = _bracket_checks(document, lambda _, source, target: args.bracket in (source, target))
    return bracket_report(coset, recorded, checks), False


# -------------------------------------------------------------------------------------------------------------------
def _set_level(args):
    if getattr(args, "verbose", False):
        logger.setLevel(logging.DEBUG)
    elif getattr(args, "quiet", False):
        logger.setLevel(logging.WARNING)
    else:
        logger.setLevel(logging.INFO)


def main(argv=None):
    """
    Entry point of the ``pialgkit`` command

    Parameters
    ----------
    argv : list of str
        Arguments without the program name. Default: ``sys.argv[1:]``

    Returns
    -------
    int
        0 for a clean report, 1 for a document or usage error, 2 for a validation or exactness failure
    """
    try:
        args = build_parser().parse_args(argv)
        _set_level(args)
        document = InputDocument.from_file(args.path)
        report, failed = args.func(document, args)
    except InputError as e:
        logger.error(str(e))
        return EXIT_PARSE
    except PiAlgError as e:
        logger.error(f"{type(e).__name__}: {e}")
        return EXIT_FAILURE

    print(report.render())
    if args.json_path:
        with open(args.json_path, "w", encoding="utf-8") as f:
            f.write(report.to_json())
        logger.debug(f"Wrote {args.json_path}")
    return EXIT_FAILURE if failed else EXIT_OK
