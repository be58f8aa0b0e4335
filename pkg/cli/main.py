"""univrcf CLI entrypoint.

Commands:
- decide: decide a formula and print its verdict and certificate
- check: verify a formula against a certificate file
- isolate: list the real roots of a polynomial
- sign: exact sign of a polynomial at a certificate point
- replay: re-check every certificate recorded in a ledger

Exit status is 0 for true/verified, 1 for false/rejected and 2 for bad input.
"""

from __future__ import annotations

import json
import logging
import sys
from collections.abc import Callable
from pathlib import Path
from typing import Any, TypeVar

import structlog
import typer
from rich.console import Console
from rich.markup import escape

from agents.checker_agent import CheckerAgent, CheckReport
from cli import render
from core.decide import Verdict
from core.engine import DecisionEngine, ReplayResult
from core.errors import FormulaSyntaxError, UnivRcfError
from schemas.settings import EngineSettings
from tools.certificates import load_certificate, parse_point, write_certificate
from tools.formula import Formula
from tools.formula_parser import parse_formula, parse_poly
from tools.isolate import isolate_roots
from tools.realalg import sign_at

app = typer.Typer(
    add_completion=False,
    help="univrcf: exact, certificate-based decisions for univariate real polynomial formulas",
)
console = Console()
err_console = Console(stderr=True)

EXIT_TRUE, EXIT_FALSE, EXIT_INPUT = 0, 1, 2

WORKERS_HELP = (
    "Threads that evaluate sample points. Results are identical for any value; "
    "the exact arithmetic holds the GIL, so this gives no speedup"
)

T = TypeVar("T")


@app.callback()
def _configure(
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Log debug events to stderr"),
) -> None:
    """Route structured logs to stderr so stdout stays machine-readable."""
    structlog.configure(
        wrapper_class=structlog.make_filtering_bound_logger(
            logging.DEBUG if verbose else logging.WARNING
        ),
        # Resolve stderr per logger so redirected streams are picked up.
        logger_factory=lambda *_: structlog.PrintLogger(file=sys.stderr),
    )


def _emit_json(payload: Any) -> None:
    typer.echo(json.dumps(payload, indent=2, sort_keys=True))


def _input_error(message: str) -> typer.Exit:
    err_console.print(f"[red]error:[/red] {escape(message)}", highlight=False)
    return typer.Exit(code=EXIT_INPUT)


def _guard(fn: Callable[[], T]) -> T:
    """Run ``fn``, turning library and value errors into exit status 2."""
    try:
        return fn()
    except (UnivRcfError, ValueError) as exc:
        raise _input_error(str(exc)) from exc


def _parse_formula_or_exit(text: str) -> Formula:
    try:
        return parse_formula(text)
    except FormulaSyntaxError as exc:
        render.render_syntax_error(err_console, text, exc)
        raise typer.Exit(code=EXIT_INPUT) from exc


@app.command()
def decide(
    formula: str = typer.Argument(..., help='Formula, e.g. "forall x. x^2 + 1 > 0"'),
    as_json: bool = typer.Option(False, "--json", help="Print a JSON report"),
    emit_cert: Path | None = typer.Option(None, "--emit-cert", help="Write the certificate"),
    db: Path | None = typer.Option(None, "--db", help="Certificate ledger (SQLite)"),
    workers: int = typer.Option(1, "--workers", min=1, help=WORKERS_HELP),
    cross_check: bool = typer.Option(
        True, "--cross-check/--no-cross-check", help="Also confirm the negation fails"
    ),
) -> None:
    """Decide FORMULA; exit 0 if it is true, 1 if it is false."""
    f = _parse_formula_or_exit(formula)
    settings = EngineSettings(workers=workers, cross_check=cross_check, ledger_path=db)

    def run() -> Verdict:
        with DecisionEngine(settings) as engine:
            return engine.decide(f)

    verdict = _guard(run)
    if emit_cert is not None:
        target: Path = emit_cert
        _guard(lambda: write_certificate(target, verdict.certificate))
    if as_json:
        _emit_json(render.verdict_payload(verdict))
    else:
        render.render_verdict(console, verdict)
        if emit_cert is not None:
            console.log(f"Wrote certificate to {emit_cert}")
    raise typer.Exit(code=EXIT_TRUE if verdict.truth else EXIT_FALSE)


@app.command()
def check(
    formula: str = typer.Argument(..., help="Formula the certificate should prove"),
    cert: Path = typer.Option(..., "--cert", help="Certificate file (list form or JSON)"),
    as_json: bool = typer.Option(False, "--json", help="Print a JSON report"),
    workers: int = typer.Option(1, "--workers", min=1, help=WORKERS_HELP),
) -> None:
    """Check a certificate for FORMULA; exit 0 iff it verifies."""
    f = _parse_formula_or_exit(formula)
    certificate = _guard(lambda: load_certificate(cert, f.quantifier))
    report = CheckReport()
    ok = CheckerAgent(workers=workers).check_certificate(f, certificate, report)
    if as_json:
        _emit_json({"ok": ok, "checks": render.checks_payload(report.entries)})
    else:
        render.render_checks(console, report.entries, title="verified" if ok else "rejected")
    raise typer.Exit(code=EXIT_TRUE if ok else EXIT_FALSE)


@app.command()
def isolate(
    poly: str = typer.Argument(..., help='Polynomial, e.g. "x^2 - 2" or "[:-2, 0, 1:]"'),
    as_json: bool = typer.Option(False, "--json", help="Print JSON certificate points"),
) -> None:
    """List the distinct real roots of POLY in increasing order."""
    p = _guard(lambda: parse_poly(poly))
    roots = _guard(lambda: isolate_roots(p))
    if as_json:
        _emit_json(render.points_payload(roots))
    else:
        render.render_points(console, roots, title=f"Real roots of {p}")


@app.command()
def sign(
    poly: str = typer.Argument(..., help="Polynomial"),
    point: str = typer.Argument(..., help='Point, e.g. "Rat 1/2" or "Arep [:-2,0,1:] 0 2"'),
) -> None:
    """Print the exact sign (-1, 0 or 1) of POLY at POINT."""
    p = _guard(lambda: parse_poly(poly))
    a = _guard(lambda: parse_point(point))
    s = _guard(lambda: sign_at(p, a))
    typer.echo(str(int(s)))


@app.command()
def replay(
    db: Path = typer.Option(..., "--db", help="Certificate ledger (SQLite)"),
    as_json: bool = typer.Option(False, "--json", help="Print a JSON report"),
    workers: int = typer.Option(1, "--workers", min=1, help=WORKERS_HELP),
) -> None:
    """Re-check every certificate in the ledger; exit 0 iff all verify."""
    if not db.exists():
        raise _input_error(f"ledger not found: {db}")
    settings = EngineSettings(workers=workers, ledger_path=db)

    def run() -> list[ReplayResult]:
        with DecisionEngine(settings) as engine:
            return engine.replay_all()

    results = _guard(run)
    if as_json:
        _emit_json(render.replay_payload(results))
    else:
        render.render_replay(console, results)
    raise typer.Exit(code=EXIT_TRUE if all(r.ok for r in results) else EXIT_FALSE)


def main() -> int:
    """Entry point for ``python -m cli.main`` and the ``univrcf`` script."""
    app()
    return 0


if __name__ == "__main__":
    sys.exit(main())
