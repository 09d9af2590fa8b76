"""Source-to-report entry points shared by the CLI and the golden tests."""

from __future__ import annotations

import json
from typing import Tuple

from .checker import check_program
from .diagnostics import Diagnostic, format_diagnostics, has_errors, sorted_diagnostics
from .evaluator import evaluate_program
from .parser import parse


def _report(status_ok: bool, diags, results, registry=None) -> dict:
    return {
        "status": "ok" if status_ok else "error",
        "diagnostics": [d.to_json() for d in sorted_diagnostics(diags)],
        "results": [r.to_json(registry) for r in results],
    }


def run_source(source: str, evaluate: bool) -> Tuple[dict, list]:
    """Parse, check and optionally evaluate; returns (json report, diagnostics)."""
    program, diags = parse(source)
    if diags:
        return _report(False, diags, []), diags
    checked = check_program(program)
    if not evaluate:
        diags = checked.diagnostics
        return _report(not has_errors(diags), diags, []), diags
    ev = evaluate_program(program, checked=checked)
    return _report(ev.ok, ev.diagnostics, ev.results, ev.registry), ev.diagnostics


def dumps(report: dict) -> str:
    return json.dumps(report, indent=2, ensure_ascii=False) + "\n"


def render_human(report: dict, diags, source: str, filename=None) -> Tuple[str, str]:
    """(stdout text, stderr text) for human mode."""
    out = []
    for r in report["results"]:
        sort = r["sort"]
        if sort["tag"] == "scalar":
            val = f"{r['value']:.12g}"
        elif sort["tag"] == "point":
            val = f"{r['value']:.12g} @{r['scale']}"
        else:
            k = sort["power"]
            val = f"{r['value']:.12g} d@{r['scale']}" + (f"^{k}" if k != 1 else "")
        if r["kind"] == "assert":
            out.append(f"[{r['stmt_index']}] assert {'ok' if r['passed'] else 'FAILED'}")
        else:
            out.append(f"[{r['stmt_index']}] {val}")
    err = format_diagnostics(diags, source, filename)
    return ("\n".join(out) + "\n" if out else ""), err
