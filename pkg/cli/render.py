"""Rich rendering and JSON payloads for the CLI.

Every function here is presentation only: tables for people, plain
dictionaries (exact rational strings, no floats) for ``--json`` output.
"""

from __future__ import annotations

from collections.abc import Sequence
from fractions import Fraction
from typing import Any

from rich.console import Console
from rich.markup import escape
from rich.table import Table

from core.decide import Verdict
from core.engine import ReplayResult
from core.errors import FormulaSyntaxError
from schemas.certificate import CheckEntry
from tools.certificates import certificate_to_dict, format_point, point_to_dict
from tools.formula_parser import format_formula
from tools.realalg import RealAlg, approx

# Display-only approximation width for the "≈" column.
_APPROX_EPS = Fraction(1, 10**6)


def _approx_text(a: RealAlg) -> str:
    return f"{float(approx(a, _APPROX_EPS)):.6g}"


# -----------------------------
# JSON payloads
# -----------------------------


def checks_payload(entries: Sequence[CheckEntry]) -> list[dict[str, Any]]:
    return [e.model_dump(mode="json") for e in entries]


def verdict_payload(verdict: Verdict) -> dict[str, Any]:
    return {
        "truth": verdict.truth,
        "certificate": certificate_to_dict(verdict.certificate),
        "checks": checks_payload(verdict.report),
        "certifies": format_formula(verdict.certifies),
        "source": verdict.source,
    }


def points_payload(points: Sequence[RealAlg]) -> list[dict[str, Any]]:
    return [point_to_dict(a) for a in points]


def replay_payload(results: Sequence[ReplayResult]) -> list[dict[str, Any]]:
    return [
        {"formula": r.formula, "formula_key": r.formula_key, "ok": r.ok, "detail": r.detail}
        for r in results
    ]


# -----------------------------
# Tables
# -----------------------------


def render_points(console: Console, points: Sequence[RealAlg], *, title: str) -> None:
    table = Table(title=title)
    table.add_column("#", justify="right")
    table.add_column("Point")
    table.add_column("≈", justify="right")
    for i, a in enumerate(points, start=1):
        table.add_row(str(i), escape(format_point(a)), _approx_text(a))
    if not points:
        table.caption = "no points"
    console.print(table)


def render_checks(console: Console, entries: Sequence[CheckEntry], *, title: str) -> None:
    table = Table(title=title)
    table.add_column("Check")
    table.add_column("Result")
    table.add_column("Detail")
    for e in entries:
        mark = "[green]ok[/green]" if e.ok else "[red]FAILED[/red]"
        table.add_row(e.check, mark, escape(e.detail))
    console.print(table)


def render_verdict(console: Console, verdict: Verdict) -> None:
    color = "green" if verdict.truth else "red"
    console.print(
        f"[bold {color}]{str(verdict.truth).lower()}[/bold {color}]  "
        f"{escape(format_formula(verdict.formula))}"
    )
    console.print(
        f"certificate for: {escape(format_formula(verdict.certifies))} ({verdict.source})"
    )
    render_points(
        console, verdict.certificate.points, title=f"{verdict.certificate.kind} certificate"
    )
    render_checks(console, verdict.report, title="Checks")


def render_replay(console: Console, results: Sequence[ReplayResult]) -> None:
    table = Table(title="Ledger replay")
    table.add_column("Formula")
    table.add_column("Result")
    table.add_column("Detail")
    for r in results:
        mark = "[green]ok[/green]" if r.ok else "[red]FAILED[/red]"
        table.add_row(escape(r.formula), mark, escape(r.detail))
    table.caption = f"{sum(r.ok for r in results)} of {len(results)} certificates verified"
    console.print(table)


def render_syntax_error(console: Console, text: str, err: FormulaSyntaxError) -> None:
    console.print(f"[red]syntax error:[/red] {escape(str(err))}", highlight=False)
    console.print(f"  {text}", highlight=False, markup=False)
    console.print("  " + " " * err.position + "^", highlight=False, markup=False)
