"""AST for the measurement language.

Spans are excluded from equality so that a program and its pretty-printed
reparse compare equal.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional, Tuple, Union


@dataclass(frozen=True)
class Span:
    line: int    # 1-based
    col: int     # 0-based, in characters
    offset: int  # 0-based, in characters from the start of the source
    length: int

    def to(self, other: "Span") -> "Span":
        """Span covering ``self`` through ``other``."""
        end = other.offset + other.length
        length = end - self.offset if other.line == self.line else self.length
        return Span(self.line, self.col, self.offset, max(length, 1))


NOWHERE = Span(1, 0, 0, 0)


def _span():
    return field(default=NOWHERE, compare=False, repr=False)


@dataclass(frozen=True)
class Number:
    value: float
    unit: Optional[str] = None   # None, "@" (point) or "d@" (difference)
    scale: Optional[str] = None
    span: Span = _span()
    unit_span: Span = _span()


@dataclass(frozen=True)
class Name:
    name: str
    span: Span = _span()


@dataclass(frozen=True)
class Binary:
    op: str
    left: "Expr"
    right: "Expr"
    span: Span = _span()   # the operator


@dataclass(frozen=True)
class Neg:
    operand: "Expr"
    span: Span = _span()   # the minus sign


@dataclass(frozen=True)
class Pow:
    base: "Expr"
    exponent: int
    span: Span = _span()   # the caret


@dataclass(frozen=True)
class SNum:
    """Signed rational constant ``[-]a[/b]``."""

    num: float
    den: Optional[float] = None
    span: Span = _span()

    @property
    def value(self) -> float:
        return self.num if self.den is None else self.num / self.den


@dataclass(frozen=True)
class Mix:
    terms: Tuple[Tuple[SNum, "Expr"], ...]
    span: Span = _span()   # the ``mix`` keyword


@dataclass(frozen=True)
class Group:
    inner: "Expr"
    span: Span = _span()


Expr = Union[Number, Name, Binary, Neg, Pow, Mix, Group]


@dataclass(frozen=True)
class FamilyDecl:
    name: str
    kind: str
    owner: Optional[str] = None
    span: Span = _span()


@dataclass(frozen=True)
class ScaleDecl:
    name: str
    family: str
    offset: Optional[SNum] = None
    factor: Optional[SNum] = None
    span: Span = _span()


@dataclass(frozen=True)
class Let:
    name: str
    expr: Expr
    span: Span = _span()


@dataclass(frozen=True)
class Check:
    expr: Expr
    span: Span = _span()


@dataclass(frozen=True)
class Assert:
    left: Expr
    cmp: str
    right: Expr
    span: Span = _span()
    cmp_span: Span = _span()


Statement = Union[FamilyDecl, ScaleDecl, Let, Check, Assert]


@dataclass(frozen=True)
class Program:
    statements: Tuple[Statement, ...]
    source: str = field(default="", compare=False, repr=False)


def walk(expr: Expr):
    """Pre-order traversal of an expression."""
    yield expr
    if isinstance(expr, Binary):
        yield from walk(expr.left)
        yield from walk(expr.right)
    elif isinstance(expr, (Neg,)):
        yield from walk(expr.operand)
    elif isinstance(expr, Pow):
        yield from walk(expr.base)
    elif isinstance(expr, Group):
        yield from walk(expr.inner)
    elif isinstance(expr, Mix):
        for _, e in expr.terms:
            yield from walk(e)


def depth(expr: Expr) -> int:
    if isinstance(expr, Binary):
        return 1 + max(depth(expr.left), depth(expr.right))
    if isinstance(expr, Neg):
        return 1 + depth(expr.operand)
    if isinstance(expr, Pow):
        return 1 + depth(expr.base)
    if isinstance(expr, Group):
        return depth(expr.inner)
    if isinstance(expr, Mix):
        return 1 + max(depth(e) for _, e in expr.terms)
    return 0


def expr_nodes(stmt: Statement) -> List[Expr]:
    if isinstance(stmt, (Let, Check)):
        return [stmt.expr]
    if isinstance(stmt, Assert):
        return [stmt.left, stmt.right]
    return []
