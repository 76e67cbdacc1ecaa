#!/usr/bin/env python3
"""
unilab CLI Entry Point

JSON results go to stdout, status lines to stderr. Exit codes:
0 decided, 1 suite or chain failure, 2 unknown within budget, 3 bad input.
"""

import sys
from typing import Any, Dict

import click

from controllers.lab_controller import EXIT_CODES, CommandResult
from routes import handle_command
from services.class_service import CLASS_NAMES
from services.config import load_settings
from services.regression_service import REGRESSION_GROUPS
from services.witness_service import WITNESS_TAGS
from utils.streaming import stream_json, stream_status, stream_table


_COMMON_OPTIONS = (
    click.option("--ring", help='Ring: Z, Z/<n>, Q[<D>], ZXYZ or "(S1)x(S2)"'),
    click.option("--matrix", help='Matrix as "a,b;c,d"'),
    click.option("--budget", type=click.IntRange(min=0), help="Search budget for bounded routes"),
    click.option("--json", "compact", is_flag=True, help="Compact single-line JSON"),
    click.option("--workers", type=click.IntRange(min=1), help="Worker processes"),
    click.option("--verbose", is_flag=True, help="Progress lines on stderr"),
)


def common_options(func):
    """--ring, --matrix, --budget, --json, --workers and --verbose on every subcommand."""
    for option in reversed(_COMMON_OPTIONS):
        func = option(func)
    return func


def _dispatch(subcommand: str, options: Dict[str, Any], globals_: Dict[str, Any]) -> CommandResult:
    try:
        settings = load_settings(workers=globals_.get("workers"), verbose=globals_.get("verbose") or None)
    except ValueError as e:
        stream_status(f"Configuration error: {e}", "error")
        sys.exit(EXIT_CODES["error"])
    return handle_command(subcommand, options, settings)


def _finish(result: CommandResult, compact: bool) -> None:
    stream_json(result, compact=compact)
    if result.status == "error":
        stream_status(f"{result.subcommand}: {result.error}", "error")
    elif result.status == "unknown":
        stream_status(f"{result.subcommand}: undecided ({result.error or 'budget exhausted'})", "warning")
    elif result.status == "failed":
        stream_status(f"{result.subcommand}: failed", "error")
    sys.exit(result.exit_code)


@click.group()
@click.version_option(package_name="unimodular-lab")
def main():
    """unilab - extensions of unimodular 2x2 matrices and the ring classes they define."""


@main.command()
@common_options
@click.option("--simple", is_flag=True, help="Require a zero (3,3) entry")
@click.option("--route", type=click.Choice(["auto", "snf", "pr5", "reduction"]), default="auto", show_default=True)
def extend(ring, matrix, budget, compact, workers, verbose, simple, route):
    """SL3-extension of a unimodular matrix."""
    options = {"ring": ring, "matrix": matrix, "simple": simple, "route": route, "budget": budget}
    _finish(_dispatch("extend", options, {"workers": workers, "verbose": verbose}), compact)


@main.command()
@common_options
@click.option("--which", help="Comma-separated statement numbers (default 1..10)")
def statements(ring, matrix, budget, compact, workers, verbose, which):
    """Decide the ten statements for one matrix."""
    options = {"ring": ring, "matrix": matrix, "which": which, "budget": budget}
    _finish(_dispatch("statements", options, {"workers": workers, "verbose": verbose}), compact)


@main.command()
@common_options
@click.option("--bound", type=click.IntRange(min=0), help="Box bound on e, f, s, t")
def nu(ring, matrix, budget, compact, workers, verbose, bound):
    """Values det(A) + es + ft over simple extensions in a box."""
    options = {"ring": ring, "matrix": matrix, "bound": bound if bound is not None else budget}
    _finish(_dispatch("nu", options, {"workers": workers, "verbose": verbose}), compact)


@main.command()
@common_options
@click.option("--t", "t", type=int, help="Element t dividing det(A)")
@click.option("--steps", type=click.IntRange(min=0), default=3, show_default=True)
def lift(ring, matrix, budget, compact, workers, verbose, t, steps):
    """Lift A towards determinant zero t-adically."""
    options = {"ring": ring, "matrix": matrix, "t": t, "steps": steps, "budget": budget}
    _finish(_dispatch("lift", options, {"workers": workers, "verbose": verbose}), compact)


@main.command()
@common_options
@click.option("--classes", help=f"Comma-separated subset of {','.join(CLASS_NAMES)}")
@click.option("--sweep", help='Moduli for a CSV sweep over Z/n, e.g. "2-16"')
def classify(ring, matrix, budget, compact, workers, verbose, classes, sweep):
    """Class membership of a finite ring by enumeration."""
    options = {"ring": ring, "classes": classes, "sweep": sweep, "workers": workers, "budget": budget}
    result = _dispatch("classify", options, {"workers": workers, "verbose": verbose})
    if sweep and not compact and result.outcome:
        click.echo(result.outcome["csv"], nl=False)
        sys.exit(result.exit_code)
    _finish(result, compact)


@main.command()
@common_options
def companion(ring, matrix, budget, compact, workers, verbose):
    """Companion test matrix of an integer matrix and its universal evaluation."""
    options = {"ring": ring, "matrix": matrix, "budget": budget}
    _finish(_dispatch("companion", options, {"workers": workers, "verbose": verbose}), compact)


@main.command()
@common_options
@click.option("--bound", type=click.IntRange(min=0), help="Box bound on (e, f)")
def pell(ring, matrix, budget, compact, workers, verbose, bound):
    """Pell-type search for a symmetric det-0 matrix."""
    options = {"ring": ring, "matrix": matrix, "bound": bound if bound is not None else budget}
    _finish(_dispatch("pell", options, {"workers": workers, "verbose": verbose}), compact)


@main.command()
@common_options
@click.option("--tag", required=True, type=click.Choice(WITNESS_TAGS, case_sensitive=False))
@click.option("--args", "args_", help='Integer inputs, e.g. "6,5,7,3"')
def witness(ring, matrix, budget, compact, workers, verbose, tag, args_):
    """Solve one of the named witness equations."""
    options = {"tag": tag, "ring": ring, "matrix": matrix, "args": args_, "budget": budget}
    _finish(_dispatch("witness", options, {"workers": workers, "verbose": verbose}), compact)


@main.command()
@common_options
@click.option("--sample", type=click.IntRange(min=1), help="Check a seeded sample instead of every matrix")
@click.option("--seed", type=int, default=0, show_default=True)
def chain(ring, matrix, budget, compact, workers, verbose, sample, seed):
    """Confirm the implication chain on every unimodular matrix of a finite ring."""
    options = {"ring": ring, "sample": sample, "seed": seed, "workers": workers, "budget": budget}
    _finish(_dispatch("chain", options, {"workers": workers, "verbose": verbose}), compact)


@main.command("verify-paper")
@common_options
@click.option("--only", help=f"Comma-separated groups from {','.join(REGRESSION_GROUPS)}")
@click.option("--seed", type=int, default=0, show_default=True)
def verify_paper(ring, matrix, budget, compact, workers, verbose, only, seed):
    """Replay the worked examples and property checks."""
    groups = [g.strip() for g in only.split(",") if g.strip()] if only else None
    options = {"only": groups, "seed": seed, "budget": budget}
    result = _dispatch("verify-paper", options, {"workers": workers, "verbose": verbose})
    if result.outcome:
        rows = [
            ("✅" if c["passed"] else "❌", c["group"], c["name"], f"{c['seconds']:.2f}s", c["detail"])
            for c in result.outcome["criteria"]
        ]
        stream_table(rows, ["", "group", "criterion", "time", "detail"])
    _finish(result, compact)


if __name__ == "__main__":
    main()
