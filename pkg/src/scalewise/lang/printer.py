"""Pretty-printer; its output reparses to an equal AST."""

from __future__ import annotations

from .nodes import (
    Assert, Binary, Check, FamilyDecl, Group, Let, Mix, Name, Neg, Number, Pow,
    Program, ScaleDecl, SNum,
)

_PREC = {"+": 1, "-": 1, "*": 2, "/": 2}


def format_number(x: float) -> str:
    if x == int(x) and abs(x) < 1e16:
        return str(int(x))
    return repr(x)


def _snum(s: SNum) -> str:
    text = format_number(s.num)
    if s.den is not None:
        text += "/" + format_number(s.den)
    return text


def _is_atom(e) -> bool:
    return isinstance(e, (Number, Name, Group, Mix))


def print_expr(e) -> str:
    if isinstance(e, Number):
        text = format_number(e.value)
        if e.unit is not None:
            text += f" {e.unit}{e.scale}"
        return text
    if isinstance(e, Name):
        return e.name
    if isinstance(e, Group):
        return f"({print_expr(e.inner)})"
    if isinstance(e, Mix):
        inner = ", ".join(f"{_snum(w)}: {print_expr(x)}" for w, x in e.terms)
        return f"mix({inner})"
    if isinstance(e, Pow):
        base = print_expr(e.base)
        if not _is_atom(e.base):
            base = f"({base})"
        return f"{base}^{e.exponent}"
    if isinstance(e, Neg):
        inner = print_expr(e.operand)
        # "-5" would read back as a negative literal
        if isinstance(e.operand, Binary) or inner[0].isdigit() or inner[0] == ".":
            inner = f"({inner})"
        return f"-{inner}"
    if isinstance(e, Binary):
        prec = _PREC[e.op]
        left, right = print_expr(e.left), print_expr(e.right)
        if isinstance(e.left, Binary) and _PREC[e.left.op] < prec:
            left = f"({left})"
        if isinstance(e.right, Binary) and _PREC[e.right.op] <= prec:
            right = f"({right})"
        return f"{left} {e.op} {right}"
    raise TypeError(f"not an expression: {e!r}")


def print_statement(s) -> str:
    if isinstance(s, FamilyDecl):
        text = f"family {s.name} kind {s.kind}"
        return text + (f" owner {s.owner}" if s.owner else "")
    if isinstance(s, ScaleDecl):
        text = f"scale {s.name} of {s.family}"
        if s.offset is not None:
            text += f" offset {_snum(s.offset)} factor {_snum(s.factor)}"
        return text
    if isinstance(s, Let):
        return f"let {s.name} = {print_expr(s.expr)}"
    if isinstance(s, Check):
        return f"check {print_expr(s.expr)}"
    if isinstance(s, Assert):
        return f"assert {print_expr(s.left)} {s.cmp} {print_expr(s.right)}"
    raise TypeError(f"not a statement: {s!r}")


def print_program(program: Program) -> str:
    return "".join(print_statement(s) + "\n" for s in program.statements)
