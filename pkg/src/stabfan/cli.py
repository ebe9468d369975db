"""``stabfan`` command line.

Exit codes: 0 success, 2 usage, 3 domain error, 4 budget exceeded.
"""
from __future__ import annotations

import functools
import json
import sys
from fractions import Fraction
from pathlib import Path

import click

from . import report
from .errors import BudgetExceeded, EmptySubset, RelationViolation, StabfanError, UnknownVertex, UnsupportedType
from .fan import Arrangement
from .plotting import write_render
from .quiver import (
    check_module,
    enumerate_stables,
    format_polynomial,
    load_module,
    module_to_json,
    parse_quiver,
    stability,
)
from .quiver.modules import DEFAULT_BUDGET
from .rootdata import parse_diagram

EXIT_DOMAIN = 3
EXIT_BUDGET = 4


def _diagram(ctx, param, value):
    try:
        return parse_diagram(value)
    except UnsupportedType as exc:
        raise click.BadParameter(str(exc)) from None


def _csv(value):
    return [x.strip() for x in value.split(",") if x.strip()]


def _rationals(ctx, param, value):
    if value is None:
        return None
    try:
        return [Fraction(x) for x in _csv(value)]
    except (ValueError, ZeroDivisionError):
        raise click.BadParameter(f"expected comma-separated rationals, got {value!r}") from None


def _ints(ctx, param, value):
    try:
        return [int(x) for x in _csv(value)]
    except ValueError:
        raise click.BadParameter(f"expected comma-separated integers, got {value!r}") from None


def _emit(payload, out: Path | None = None) -> None:
    text = report.dumps(payload)
    if out is None:
        click.echo(text, nl=False)
    else:
        Path(out).write_text(text, encoding="utf-8")


def domain_errors(fn):
    """Map library exceptions onto exit codes."""

    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except BudgetExceeded as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(EXIT_BUDGET)
        except StabfanError as exc:
            click.echo(f"error: {type(exc).__name__}: {exc}", err=True)
            sys.exit(EXIT_DOMAIN)

    return wrapper


def _arrangement(diagram, j_text, theta=None):
    """Build the arrangement and reorder theta from the --j order to canonical order."""
    names = _csv(j_text)
    try:
        arr = Arrangement(diagram, names)
    except (UnknownVertex, EmptySubset) as exc:
        raise click.BadParameter(str(exc), param_hint="--j") from None
    if len(set(names)) != len(names):
        raise click.BadParameter("repeated vertex", param_hint="--j")
    if theta is None:
        return arr, None
    if len(theta) != len(names):
        raise click.BadParameter(f"--theta needs {len(names)} entries to match --j", param_hint="--theta")
    given = dict(zip(names, theta))
    return arr, [given[v] for v in arr.J]


diagram_option = click.option("--diagram", required=True, callback=_diagram, help="e.g. D4~, A1~, E6~")
j_option = click.option("--j", "j_text", required=True, help="comma-separated vertices, e.g. e,3")
radius_option = click.option("--radius", type=click.IntRange(min=0), default=4, show_default=True)
budget_option = click.option("--budget", type=click.IntRange(min=1), default=DEFAULT_BUDGET, show_default=True)


@click.group()
@click.version_option(package_name="stabfan")
def main():
    """Stability parameters of intersection arrangements, with a brute-force oracle."""


@main.command()
@diagram_option
@j_option
@click.option("--theta", required=True, callback=_rationals, help="values over J, in --j order")
@domain_errors
def classify(diagram, j_text, theta):
    """Locate a stability vector in the fan and report its stable count."""
    arr, theta = _arrangement(diagram, j_text, theta)
    _emit(report.classification_json(arr, arr.classify(theta)))


@main.command()
@diagram_option
@j_option
@radius_option
@click.option("--out", type=click.Path(dir_okay=False, path_type=Path))
@domain_errors
def fan(diagram, j_text, radius, out):
    """Enumerate chambers and faces within RADIUS wall crossings."""
    arr, _ = _arrangement(diagram, j_text)
    _emit(report.slice_json(arr, arr.enumerate_faces(radius)), out)


@main.command()
@diagram_option
@j_option
@radius_option
@click.option("--out", type=click.Path(dir_okay=False, path_type=Path), required=True)
@domain_errors
def render(diagram, j_text, radius, out):
    """Draw a rank-2 arrangement to an SVG, plus a CSV table of its walls."""
    arr, _ = _arrangement(diagram, j_text)
    fan_slice = arr.enumerate_faces(radius)
    svg, table = write_render(arr, fan_slice, out)
    _emit({"svg": str(svg), "walls": str(table), "lines": len(arr.wall_lines(fan_slice))})


@main.command()
@diagram_option
@j_option
@radius_option
@click.option("--out", type=click.Path(dir_okay=False, path_type=Path))
@domain_errors
def graph(diagram, j_text, radius, out):
    """Chamber adjacency (mutation) graph within RADIUS."""
    arr, _ = _arrangement(diagram, j_text)
    _emit(report.graph_json(arr, arr.mutation_graph(radius), radius), out)


@main.command()
@diagram_option
@j_option
@click.option("--theta", required=True, callback=_rationals)
@click.option("--quiver", "quiver_path", required=True, type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option("--bound", required=True, callback=_ints)
@click.option("--field", "field_name", type=click.Choice(["F2", "F3"]), default="F2", show_default=True)
@budget_option
@domain_errors
def crosscheck(diagram, j_text, theta, quiver_path, bound, field_name, budget):
    """Compare the predicted stable count with exhaustive enumeration."""
    arr, theta = _arrangement(diagram, j_text, theta)
    P = parse_quiver(quiver_path.read_text(encoding="utf-8"))
    result = report.crosscheck(arr, theta, P, bound, field_name, budget)
    _emit(report.crosscheck_json(arr, result))


@main.group()
def oracle():
    """Quiver-with-potential representations over small fields."""


def _load(quiver_path, module_path):
    P = parse_quiver(quiver_path.read_text(encoding="utf-8"))
    if module_path is None:
        return P, None
    try:
        data = json.loads(module_path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise click.BadParameter(f"invalid JSON: {exc}", param_hint="--module") from None
    return P, load_module(data, P)


quiver_option = click.option(
    "--quiver", "quiver_path", required=True, type=click.Path(exists=True, dir_okay=False, path_type=Path)
)
module_option = click.option(
    "--module", "module_path", required=True, type=click.Path(exists=True, dir_okay=False, path_type=Path)
)


@oracle.command("check")
@quiver_option
@module_option
@domain_errors
def oracle_check(quiver_path, module_path):
    """Check that a module satisfies the Jacobi relations."""
    P, M = _load(quiver_path, module_path)
    result = check_module(P, M)
    _emit(
        {
            "valid": result.valid,
            "violated": list(result.violated),
            "relations": {a: format_polynomial(r) for a, r in P.relations.items()},
        }
    )


@oracle.command("stable")
@quiver_option
@click.option("--theta", required=True, callback=_rationals)
@module_option
@budget_option
@domain_errors
def oracle_stable(quiver_path, theta, module_path, budget):
    """King (semi)stability of one module."""
    P, M = _load(quiver_path, module_path)
    if len(theta) != len(P.vertices):
        raise click.BadParameter(f"--theta needs {len(P.vertices)} entries", param_hint="--theta")
    report_ = check_module(P, M)
    if not report_.valid:
        raise RelationViolation(f"module violates relations {list(report_.violated)}")
    v = stability(theta, P, M, budget)
    _emit(
        {
            "pairing": report.rational(v.pairing),
            "semistable": v.semistable,
            "stable": v.stable,
            "witness": None if v.witness is None else list(v.witness),
        }
    )


@oracle.command("enumerate")
@quiver_option
@click.option("--theta", required=True, callback=_rationals)
@click.option("--bound", required=True, callback=_ints)
@click.option("--field", "field_name", type=click.Choice(["F2", "F3"]), default="F2", show_default=True)
@budget_option
@domain_errors
def oracle_enumerate(quiver_path, theta, bound, field_name, budget):
    """All theta-stable modules up to isomorphism within a dimension bound."""
    P, _ = _load(quiver_path, None)
    if len(theta) != len(P.vertices) or len(bound) != len(P.vertices):
        raise click.BadParameter(f"--theta and --bound need {len(P.vertices)} entries each")
    stables = enumerate_stables(P, theta, bound, field_name, budget)
    _emit(
        {
            "count": len(stables),
            "classes": [list(M.dim_vector) for M in stables],
            "modules": [module_to_json(M) for M in stables],
        }
    )


if __name__ == "__main__":
    main()
