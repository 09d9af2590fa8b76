"""Diagnostics and their rendering."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, List, Optional

from .nodes import Span


@dataclass(frozen=True)
class Diagnostic:
    code: str
    message: str
    span: Span
    severity: str = "error"

    def to_json(self) -> dict:
        return {"code": self.code, "message": self.message, "line": self.span.line,
                "col": self.span.col, "len": self.span.length, "severity": self.severity}


class DiagnosticError(Exception):
    """Raised by the convenience entry points when a source has errors."""

    def __init__(self, diagnostics: List[Diagnostic], source: str = ""):
        self.diagnostics = sorted_diagnostics(diagnostics)
        self.source = source
        super().__init__(format_diagnostics(self.diagnostics, source) or "error")


def sorted_diagnostics(diags: Iterable[Diagnostic]) -> List[Diagnostic]:
    return sorted(diags, key=lambda d: (d.span.line, d.span.col, d.code))


def has_errors(diags: Iterable[Diagnostic]) -> bool:
    return any(d.severity == "error" for d in diags)


def format_diagnostics(diags: Iterable[Diagnostic], source: str,
                       filename: Optional[str] = None) -> str:
    """Render diagnostics as source excerpts with caret underlines.

    Ordering is by (line, col, code) whatever the input order.
    """
    lines = source.splitlines()
    blocks = []
    for d in sorted_diagnostics(diags):
        sp = d.span
        where = f"{filename}:" if filename else ""
        text = lines[sp.line - 1] if 0 < sp.line <= len(lines) else ""
        gutter = str(sp.line)
        pad = " " * len(gutter)
        width = max(1, min(sp.length, max(len(text) - sp.col, 1)))
        blocks.append(
            f"{d.severity}[{d.code}]: {d.message}\n"
            f"{pad}--> {where}{sp.line}:{sp.col + 1}\n"
            f"{pad} |\n"
            f"{gutter} | {text}\n"
            f"{pad} | {' ' * sp.col}{'^' * width}\n"
        )
    return "\n".join(blocks)
