"""Evaluation of checked programs."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Dict, List, Mapping, Optional

from .. import errors as E
from ..errors import MeasureError
from ..quantity import (
    Quantity, apply_binary, compare, difference, mix, negate, point, power_int, scalar,
)
from ..scales import Registry
from ..sorts import Scalar, sort_to_json
from .checker import CheckResult, check_program
from .diagnostics import Diagnostic
from .nodes import Assert, Binary, Check, Group, Let, Mix, Name, Neg, Number, Pow, Program

LiteralHook = Callable[[Quantity], Quantity]


def literal_value(node: Number, registry: Registry) -> Quantity:
    if node.unit is None:
        return scalar(node.value)
    try:
        scale = registry.scale(node.scale)
        if node.unit == "@":
            return point(node.value, scale)
        return difference(node.value, scale)
    except MeasureError as exc:
        raise exc.at(node.unit_span)


def eval_expr(expr, env: Mapping[str, Quantity], registry: Registry,
              literal: Optional[LiteralHook] = None) -> Quantity:
    """Value of ``expr`` in reference-scale readings.

    ``literal``, when given, rewrites every unit-carrying literal before use;
    the meaningfulness oracle uses it to move literals to a transformed scale.
    """
    if isinstance(expr, Number):
        q = literal_value(expr, registry)
        if literal is not None and expr.unit is not None:
            q = literal(q)
        return q
    if isinstance(expr, Name):
        try:
            return env[expr.name]
        except KeyError:
            raise MeasureError(E.E_UNBOUND_NAME, f"unbound name {expr.name!r}",
                               expr.span) from None
    if isinstance(expr, Group):
        return eval_expr(expr.inner, env, registry, literal)
    try:
        if isinstance(expr, Binary):
            a = eval_expr(expr.left, env, registry, literal)
            b = eval_expr(expr.right, env, registry, literal)
            return apply_binary(expr.op, a, b)
        if isinstance(expr, Neg):
            return negate(eval_expr(expr.operand, env, registry, literal))
        if isinstance(expr, Pow):
            return power_int(eval_expr(expr.base, env, registry, literal), expr.exponent)
        if isinstance(expr, Mix):
            weights = []
            for w, _ in expr.terms:
                if w.den == 0:
                    raise MeasureError(E.E_DIV_ZERO, "zero denominator in weight", w.span)
                weights.append(w.value)
            pts = [eval_expr(e, env, registry, literal) for _, e in expr.terms]
            return mix(weights, pts)
    except MeasureError as exc:
        raise exc.at(expr.span)
    raise TypeError(f"not an expression: {expr!r}")


@dataclass
class StatementResult:
    stmt_index: int
    kind: str                       # "check" or "assert"
    value: Quantity                 # check value, or left side of an assert
    passed: Optional[bool] = None   # asserts only
    right: Optional[Quantity] = None

    def to_json(self, registry: Registry) -> dict:
        d = {"stmt_index": self.stmt_index, "kind": self.kind,
             "sort": sort_to_json(self.value.sort), "value": self.value.value}
        fam = self.value.sort.family
        if fam is not None:
            d["scale"] = registry.display_scale(fam).name
        if self.kind == "assert":
            d["passed"] = self.passed
            d["right"] = self.right.value
        return d


@dataclass
class EvalResult:
    check: CheckResult
    results: List[StatementResult] = field(default_factory=list)
    diagnostics: List[Diagnostic] = field(default_factory=list)

    @property
    def registry(self) -> Registry:
        return self.check.registry

    @property
    def ok(self) -> bool:
        return not any(d.severity == "error" for d in self.diagnostics)


def _describe(q: Quantity, registry: Registry) -> str:
    if isinstance(q.sort, Scalar):
        return repr(q.value)
    return f"{q.value!r} ({q.sort} in {registry.display_scale(q.sort.family).name})"


def evaluate_program(program: Program, registry: Optional[Registry] = None,
                     checked: Optional[CheckResult] = None) -> EvalResult:
    """Check, then evaluate statements in order.

    Sort errors block evaluation entirely. A runtime error stops evaluation at
    that statement; failed assertions are reported and evaluation continues.
    """
    checked = checked or check_program(program, registry)
    out = EvalResult(checked, diagnostics=list(checked.diagnostics))
    if not checked.ok:
        return out
    reg = checked.registry
    env: Dict[str, Quantity] = {}
    for idx, stmt in enumerate(program.statements):
        try:
            if isinstance(stmt, Let):
                env[stmt.name] = eval_expr(stmt.expr, env, reg)
            elif isinstance(stmt, Check):
                v = eval_expr(stmt.expr, env, reg).to_reference()
                out.results.append(StatementResult(idx, "check", v))
            elif isinstance(stmt, Assert):
                a = eval_expr(stmt.left, env, reg).to_reference()
                b = eval_expr(stmt.right, env, reg).to_reference()
                try:
                    ok = compare(stmt.cmp, a, b)
                except MeasureError as exc:
                    raise exc.at(stmt.cmp_span)
                out.results.append(StatementResult(idx, "assert", a, ok, b))
                if not ok:
                    out.diagnostics.append(Diagnostic(
                        E.E_ASSERT_FAILED,
                        f"assertion failed: {_describe(a, reg)} {stmt.cmp} {_describe(b, reg)}",
                        stmt.span))
        except MeasureError as exc:
            out.diagnostics.append(Diagnostic(exc.code, exc.message, exc.span or stmt.span))
            break
    return out

