"""Tokenizer for ``.msr`` sources."""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import List

from .nodes import Span

KEYWORDS = frozenset({"family", "scale", "let", "check", "assert", "mix"})
STATEMENT_KEYWORDS = frozenset({"family", "scale", "let", "check", "assert"})

_TOKEN_RE = re.compile(r"""
    (?P<ws>[ \t\r\n]+)
  | (?P<comment>\#[^\n]*)
  | (?P<number>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)
  | (?P<dunit>d@)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<op>==|!=|<=|>=|[-+*/^()<>=,:;@−])
""", re.VERBOSE)


@dataclass(frozen=True)
class Token:
    kind: str    # NUMBER, IDENT, KW, OP, DUNIT, BAD, EOF
    text: str
    span: Span

    def is_op(self, *texts: str) -> bool:
        return self.kind == "OP" and self.text in texts

    def is_kw(self, *texts: str) -> bool:
        return self.kind == "KW" and self.text in texts


def tokenize(source: str) -> List[Token]:
    """Split ``source`` into tokens; a character outside the alphabet becomes a BAD token."""
    tokens: List[Token] = []
    pos, line, line_start = 0, 1, 0
    n = len(source)
    while pos < n:
        m = _TOKEN_RE.match(source, pos)
        col = pos - line_start
        if m is None:
            tokens.append(Token("BAD", source[pos], Span(line, col, pos, 1)))
            pos += 1
            continue
        kind = m.lastgroup
        text = m.group()
        span = Span(line, col, pos, len(text))
        if kind == "number":
            tokens.append(Token("NUMBER", text, span))
        elif kind == "dunit":
            tokens.append(Token("DUNIT", text, span))
        elif kind == "ident":
            tokens.append(Token("KW" if text in KEYWORDS else "IDENT", text, span))
        elif kind == "op":
            # the typographic minus is accepted as '-'
            tokens.append(Token("OP", "-" if text == "−" else text, span))
        newlines = text.count("\n")
        if newlines:
            line += newlines
            line_start = pos + text.rindex("\n") + 1
        pos = m.end()
    tokens.append(Token("EOF", "", Span(line, pos - line_start, pos, 0)))
    return tokens
