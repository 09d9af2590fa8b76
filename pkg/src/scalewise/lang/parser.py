"""Recursive-descent parser for ``.msr`` programs.

Grammar (statements may be separated by ``;`` or whitespace)::

    family_decl := "family" IDENT "kind" ("affine"|"linear"|"absolute") ["owner" IDENT]
    scale_decl  := "scale" IDENT "of" IDENT ["offset" snum "factor" snum]
    let         := "let" IDENT "=" expr
    check       := "check" expr
    assert      := "assert" expr CMP expr
    expr        := term {("+"|"-") term}
    term        := unary {("*"|"/") unary}
    unary       := "-" unary | factor
    factor      := base ["^" ["-"] INT]
    base        := NUMBER [unit] | IDENT | "(" expr ")"
                 | "mix" "(" snum ":" expr {"," snum ":" expr} ")"
    unit        := "@" IDENT | "d@" IDENT
    snum        := ["-"] NUMBER ["/" NUMBER]

A minus sign written directly before a number literal is part of the
literal, so ``-5 @C`` is the point at -5 degrees rather than the (undefined)
negation of a point.
"""

from __future__ import annotations

import math
import re
from typing import List, Optional, Tuple

from ..errors import E_SYNTAX
from .diagnostics import Diagnostic, DiagnosticError
from .lexer import STATEMENT_KEYWORDS, Token, tokenize
from .nodes import (
    Assert, Binary, Check, FamilyDecl, Group, Let, Mix, Name, Neg, Number, Pow,
    Program, ScaleDecl, SNum, Span,
)

KINDS = ("affine", "linear", "absolute")
CMPS = ("==", "!=", "<", "<=", ">", ">=")
_INT_RE = re.compile(r"\d+$")


class _Stop(Exception):
    def __init__(self, diag: Diagnostic):
        self.diag = diag


class Parser:
    def __init__(self, source: str):
        self.source = source
        self.tokens = tokenize(source)
        self.diagnostics: List[Diagnostic] = []
        self.i = 0

    # token plumbing

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    @property
    def prev(self) -> Token:
        return self.tokens[max(self.i - 1, 0)]

    def advance(self) -> Token:
        t = self.tokens[self.i]
        if t.kind != "EOF":
            self.i += 1
        return t

    def _at_boundary(self) -> bool:
        """End of input, ``;``, or the keyword opening the next statement."""
        t = self.tok
        return t.kind == "EOF" or t.is_op(";") or (t.kind == "KW" and t.text in STATEMENT_KEYWORDS)

    def error(self, message: str) -> _Stop:
        if self.tok.kind == "BAD":
            return _Stop(Diagnostic(E_SYNTAX, f"unexpected character {self.tok.text!r}",
                                    self.tok.span))
        # Running into the end of a statement blames the last token consumed.
        span = self.prev.span if self._at_boundary() and self.i > 0 else self.tok.span
        found = "end of input" if self.tok.kind == "EOF" else repr(self.tok.text)
        return _Stop(Diagnostic(E_SYNTAX, f"{message}, found {found}", span))

    def expect_op(self, text: str) -> Token:
        if not self.tok.is_op(text):
            raise self.error(f"expected {text!r}")
        return self.advance()

    def expect_ident(self, what: str = "identifier") -> Token:
        if self.tok.kind != "IDENT":
            raise self.error(f"expected {what}")
        return self.advance()

    def expect_word(self, word: str) -> Token:
        if not (self.tok.kind == "IDENT" and self.tok.text == word):
            raise self.error(f"expected {word!r}")
        return self.advance()

    # statements

    def program(self) -> Program:
        stmts = []
        while self.tok.kind != "EOF":
            if self.tok.is_op(";"):
                self.advance()
                continue
            start = self.i
            try:
                stmt = self.statement()
                if not self._at_boundary():
                    raise self.error("expected end of statement")
                stmts.append(stmt)
            except _Stop as stop:
                self.diagnostics.append(stop.diag)
                if self.i == start:
                    self.advance()
                while not self._at_boundary():
                    self.advance()
        return Program(tuple(stmts), self.source)

    def _stmt_span(self, first: Token) -> Span:
        return first.span.to(self.prev.span)

    def statement(self):
        t = self.tok
        if t.is_kw("family"):
            self.advance()
            name = self.expect_ident("family name").text
            self.expect_word("kind")
            if not (self.tok.kind == "IDENT" and self.tok.text in KINDS):
                raise self.error("expected affine, linear or absolute")
            kind = self.advance().text
            owner = None
            if self.tok.kind == "IDENT" and self.tok.text == "owner":
                self.advance()
                owner = self.expect_ident("owner name").text
            return FamilyDecl(name, kind, owner, span=self._stmt_span(t))
        if t.is_kw("scale"):
            self.advance()
            name = self.expect_ident("scale name").text
            self.expect_word("of")
            family = self.expect_ident("family name").text
            offset = factor = None
            if self.tok.kind == "IDENT" and self.tok.text == "offset":
                self.advance()
                offset = self.snum()
                self.expect_word("factor")
                factor = self.snum()
            return ScaleDecl(name, family, offset, factor, span=self._stmt_span(t))
        if t.is_kw("let"):
            self.advance()
            name = self.expect_ident("binding name").text
            self.expect_op("=")
            expr = self.expr()
            return Let(name, expr, span=self._stmt_span(t))
        if t.is_kw("check"):
            self.advance()
            expr = self.expr()
            return Check(expr, span=self._stmt_span(t))
        if t.is_kw("assert"):
            self.advance()
            left = self.expr()
            if not (self.tok.kind == "OP" and self.tok.text in CMPS):
                raise self.error("expected a comparison operator")
            cmp_tok = self.advance()
            right = self.expr()
            return Assert(left, cmp_tok.text, right, span=self._stmt_span(t),
                          cmp_span=cmp_tok.span)
        raise self.error("expected a statement (family, scale, let, check or assert)")

    # expressions

    def expr(self):
        left = self.term()
        while self.tok.is_op("+", "-"):
            op = self.advance()
            left = Binary(op.text, left, self.term(), span=op.span)
        return left

    def term(self):
        left = self.unary()
        while self.tok.is_op("*", "/"):
            op = self.advance()
            left = Binary(op.text, left, self.unary(), span=op.span)
        return left

    def unary(self):
        if self.tok.is_op("-"):
            minus = self.advance()
            if self.tok.kind == "NUMBER":
                return self.factor(self.number(minus))
            return Neg(self.unary(), span=minus.span)
        return self.factor(self.base())

    def factor(self, base):
        if not self.tok.is_op("^"):
            return base
        caret = self.advance()
        sign = 1
        if self.tok.is_op("-"):
            self.advance()
            sign = -1
        if not (self.tok.kind == "NUMBER" and _INT_RE.match(self.tok.text)):
            raise self.error("expected an integer exponent")
        n = sign * int(self.advance().text)
        return Pow(base, n, span=caret.span)

    def literal(self) -> float:
        t = self.tok
        value = float(t.text)
        if not math.isfinite(value):
            raise _Stop(Diagnostic(E_SYNTAX, f"number {t.text!r} is out of range", t.span))
        self.advance()
        return value

    def number(self, minus: Optional[Token] = None) -> Number:
        t = self.tok
        value = self.literal()
        first = t
        if minus is not None:
            value, first = -value, minus
        unit = scale = None
        unit_span = t.span
        if self.tok.is_op("@") or self.tok.kind == "DUNIT":
            u = self.advance()
            unit = u.text
            s = self.expect_ident("scale name")
            scale = s.text
            unit_span = u.span.to(s.span)
        return Number(value, unit, scale, span=first.span.to(self.prev.span),
                      unit_span=unit_span)

    def base(self):
        t = self.tok
        if t.kind == "NUMBER":
            return self.number()
        if t.kind == "IDENT":
            self.advance()
            return Name(t.text, span=t.span)
        if t.is_op("("):
            self.advance()
            inner = self.expr()
            close = self.expect_op(")")
            return Group(inner, span=t.span.to(close.span))
        if t.is_kw("mix"):
            self.advance()
            self.expect_op("(")
            terms = [self.mix_term()]
            while self.tok.is_op(","):
                self.advance()
                terms.append(self.mix_term())
            self.expect_op(")")
            return Mix(tuple(terms), span=t.span)
        raise self.error("expected an operand")

    def mix_term(self) -> Tuple[SNum, object]:
        w = self.snum()
        self.expect_op(":")
        return (w, self.expr())

    def snum(self) -> SNum:
        first = self.tok
        sign = 1.0
        if self.tok.is_op("-"):
            self.advance()
            sign = -1.0
        if self.tok.kind != "NUMBER":
            raise self.error("expected a number")
        num = sign * self.literal()
        den = None
        if self.tok.is_op("/"):
            self.advance()
            if self.tok.kind != "NUMBER":
                raise self.error("expected a denominator")
            den = self.literal()
        return SNum(num, den, span=first.span.to(self.prev.span))


def parse(source: str) -> Tuple[Program, List[Diagnostic]]:
    """Parse ``source``, recovering at statement boundaries.

    Returns the statements that parsed and every syntax diagnostic found.
    """
    p = Parser(source)
    prog = p.program()
    return prog, p.diagnostics


def parse_expression(text: str):
    """Parse a single expression (no statement keyword)."""
    p = Parser(text)
    try:
        expr = p.expr()
        if p.tok.kind != "EOF":
            raise p.error("unexpected trailing input")
    except _Stop as stop:
        p.diagnostics.append(stop.diag)
    if p.diagnostics:
        raise DiagnosticError(p.diagnostics, text)
    return expr


def parse_program(source: str) -> Program:
    prog, diags = parse(source)
    if diags:
        raise DiagnosticError(diags, source)
    return prog
