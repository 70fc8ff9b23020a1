"""Batch command-line interface.

Machine-readable output (JSON, or the table renderings) goes to stdout
or --out; every diagnostic goes to stderr. Exit codes: 0 success,
1 pipeline/domain error, 2 validation error, 3 I/O error.
"""

from __future__ import annotations

import json
import sys

import click

from . import reproduce
from .errors import PipelineError, TwoDulvError, ValidationError
from .pipeline import (canonical_json, load_report, report_to_dict,
                       run_pipeline, validate_session, with_overrides)

EXIT_OK = 0
EXIT_PIPELINE = 1
EXIT_VALIDATION = 2
EXIT_IO = 3


def _fail(code: int, message: str):
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


def _load_session_doc(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as err:
        _fail(EXIT_IO, f"cannot read {path}: {err}")
    except json.JSONDecodeError as err:
        _fail(EXIT_VALIDATION, f"{path} is not valid JSON: {err}")


def _emit(text: str, out: str | None):
    if out:
        try:
            with open(out, "w", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as err:
            _fail(EXIT_IO, f"cannot write {out}: {err}")
    else:
        click.echo(text, nl=False)


def _session_with_overrides(path, eta, alpha):
    doc = _load_session_doc(path)
    try:
        session = validate_session(doc)
        return with_overrides(session, eta=eta, alpha=alpha)
    except ValidationError as err:
        for p in err.problems:
            click.echo(f"error: {p}", err=True)
        sys.exit(EXIT_VALIDATION)


@click.group()
def main():
    """Multi-round linguistic group decision engine."""


@main.command()
@click.option("--session", "session_path", required=True, type=click.Path())
def validate(session_path):
    """Check a session file; print warnings, or every validation error."""
    doc = _load_session_doc(session_path)
    try:
        session = validate_session(doc)
    except ValidationError as err:
        for p in err.problems:
            click.echo(f"error: {p}", err=True)
        sys.exit(EXIT_VALIDATION)
    for w in session.warnings:
        click.echo(f"warning: {w}", err=True)
    click.echo(f"ok: {len(session.experts)} experts, {len(session.alternatives)} "
               f"alternatives, {len(session.rounds)} rounds")


@main.command()
@click.option("--session", "session_path", required=True, type=click.Path())
@click.option("--eta", type=float, default=None, help="override session eta")
@click.option("--alpha", type=float, default=None, help="override session alpha")
@click.option("--normalize-rows", is_flag=True, default=False)
@click.option("--format", "fmt", type=click.Choice(["json", "table"]), default="json")
@click.option("--out", type=click.Path(), default=None)
def run(session_path, eta, alpha, normalize_rows, fmt, out):
    """Run the full pipeline and emit the decision report."""
    session = _session_with_overrides(session_path, eta, alpha)
    for w in session.warnings:
        click.echo(f"warning: {w}", err=True)
    try:
        report = run_pipeline(session, normalize_rows=normalize_rows)
    except PipelineError as err:
        _fail(EXIT_PIPELINE, str(err))
    except TwoDulvError as err:
        _fail(EXIT_PIPELINE, str(err))
    if fmt == "json":
        _emit(canonical_json(report_to_dict(report)), out)
    else:
        _emit(render_report(report), out)


@main.command()
@click.option("--report", "report_path", required=True, type=click.Path())
@click.option("--out", type=click.Path(), default=None)
def report(report_path, out):
    """Render a stored report as human-readable tables."""
    try:
        rep = load_report(report_path)
    except OSError as err:
        _fail(EXIT_IO, f"cannot read {report_path}: {err}")
    except (ValidationError, json.JSONDecodeError, KeyError) as err:
        _fail(EXIT_VALIDATION, f"bad report file: {err}")
    _emit(render_report(rep), out)


@main.command("reproduce-paper")
@click.option("--eta", type=float, default=None)
@click.option("--alpha", type=float, default=None)
@click.option("--out", type=click.Path(), default=None)
def reproduce_paper(eta, alpha, out):
    """Run the bundled reference dataset and check the published values."""
    try:
        result = reproduce.run_checks(eta=eta, alpha=alpha)
    except TwoDulvError as err:
        _fail(EXIT_PIPELINE, str(err))
    lines = []
    for name, ok, detail in result["checks"]:
        lines.append(f"[{'PASS' if ok else 'FAIL'}] {name}: {detail}")
    lines.append(f"catalogued publication discrepancies: {len(result['discrepancies'])} "
                 "(see twodulv/fixtures/discrepancies.json)")
    _emit("\n".join(lines) + "\n", out)
    if not result["passed"]:
        sys.exit(EXIT_PIPELINE)


def render_report(rep) -> str:
    """Weights, fitted vectors, and the ranking as aligned text tables."""
    out = []
    out.append(f"# decision report (eta={rep.eta:g}, alpha={rep.alpha:g}, "
               f"normalize_rows={rep.normalize_rows})")
    out.append("")
    out.append("## expert weights")
    header = f"{'expert':<12}{'lambda1':>10}{'lambda2':>10}{'combined':>10}"
    out.append(header)
    for i, e in enumerate(rep.experts):
        out.append(f"{e:<12}{rep.lambda1[i]:>10.4f}{rep.lambda2[i]:>10.4f}"
                   f"{rep.lambda_combined[i]:>10.4f}")
    out.append("")
    out.append("## fitted preference vectors")
    out.append(f"{'expert':<12}" + "".join(f"{a:>10}" for a in rep.alternatives)
               + f"{'eigenvalue':>12}{'residual':>11}")
    for i, e in enumerate(rep.experts):
        f = rep.fitted[i]
        out.append(f"{e:<12}" + "".join(f"{x:>10.4f}" for x in f["vector"])
                   + f"{f['eigenvalue']:>12.6f}{f['residual']:>11.2e}")
    out.append("")
    out.append("## group preference")
    out.append(f"{'':<12}" + "".join(f"{a:>10}" for a in rep.alternatives))
    out.append(f"{'s_g':<12}" + "".join(f"{x:>10.4f}" for x in rep.group_vector))
    out.append("")
    out.append("ranking: " + " > ".join(rep.ranking))
    if rep.ties:
        for t in rep.ties:
            out.append("tie: " + " = ".join(t))
    if rep.warnings:
        out.append("")
        out.append("## warnings")
        out.extend(f"- {w}" for w in rep.warnings)
    return "\n".join(out) + "\n"


if __name__ == "__main__":  # pragma: no cover
    main()
