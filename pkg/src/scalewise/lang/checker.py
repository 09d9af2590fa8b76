"""Static sort inference over programs.

Uses the same sort table as the runtime (:func:`scalewise.quantity.binary_sort`),
so anything accepted here cannot raise a sort error when evaluated.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Set

from .. import errors as E
from ..errors import MeasureError
from ..quantity import binary_sort, compare_sort, negate_sort, power_sort_of
from ..scales import Kind, Registry
from ..sorts import SCALAR, Point, Power, Sort
from .diagnostics import Diagnostic, DiagnosticError
from .nodes import (
    Assert, Binary, Check, FamilyDecl, Group, Let, Mix, Name, Neg, Number, Pow,
    Program, ScaleDecl, SNum,
)


class _Poisoned(Exception):
    """A name whose definition already failed; reported once, not again per use."""


# Sentinel in environments for bindings whose definition did not check.
POISONED = object()


def literal_sort(node: Number, registry: Registry) -> Sort:
    if node.unit is None:
        return SCALAR
    try:
        scale = registry.scale(node.scale)
    except MeasureError as exc:
        raise exc.at(node.unit_span)
    fam = scale.family
    if node.unit == "@":
        if not fam.admits_points:
            raise MeasureError(E.E_KIND_SORT,
                               f"{fam.kind} family {fam.name!r} has no points; "
                               f"write a difference with d@{node.scale}",
                               node.unit_span)
        return Point(fam.name)
    if not fam.admits_powers:
        raise MeasureError(E.E_KIND_SORT,
                           f"absolute family {fam.name!r} has only scalar values",
                           node.unit_span)
    return Power(fam.name, 1)


def infer_sort(expr, env: Mapping[str, object], registry: Registry) -> Sort:
    """Sort of ``expr``; raises :class:`MeasureError` carrying the offending span."""
    if isinstance(expr, Number):
        return literal_sort(expr, registry)
    if isinstance(expr, Name):
        if expr.name not in env:
            raise MeasureError(E.E_UNBOUND_NAME, f"unbound name {expr.name!r}", expr.span)
        sort = env[expr.name]
        if sort is POISONED:
            raise _Poisoned(expr.name)
        return sort
    if isinstance(expr, Group):
        return infer_sort(expr.inner, env, registry)
    if isinstance(expr, Binary):
        a = infer_sort(expr.left, env, registry)
        b = infer_sort(expr.right, env, registry)
        try:
            return binary_sort(expr.op, a, b)
        except MeasureError as exc:
            raise exc.at(expr.span)
    if isinstance(expr, Neg):
        a = infer_sort(expr.operand, env, registry)
        try:
            return negate_sort(a)
        except MeasureError as exc:
            raise exc.at(expr.span)
    if isinstance(expr, Pow):
        a = infer_sort(expr.base, env, registry)
        try:
            return power_sort_of(a, expr.exponent)
        except MeasureError as exc:
            raise exc.at(expr.span)
    if isinstance(expr, Mix):
        family = None
        for _, arg in expr.terms:
            s = infer_sort(arg, env, registry)
            if not isinstance(s, Point) or (family is not None and s.family != family):
                span = getattr(arg, "span", expr.span)
                raise MeasureError(E.E_MIX_SORT,
                                   f"mix takes points of one family, got {s}", span)
            family = s.family
        return Point(family)
    raise TypeError(f"not an expression: {expr!r}")


@dataclass
class CheckResult:
    registry: Registry
    diagnostics: List[Diagnostic] = field(default_factory=list)
    # statement index -> sort of its expression (lets and checks) or compared sides (asserts)
    sorts: Dict[int, Sort] = field(default_factory=dict)
    failed: Set[int] = field(default_factory=set)

    @property
    def ok(self) -> bool:
        return not any(d.severity == "error" for d in self.diagnostics)


def _snum_value(s: SNum) -> float:
    if s.den == 0:
        raise MeasureError(E.E_DIV_ZERO, "zero denominator in constant", s.span)
    return s.value


def declare(stmt, registry: Registry) -> None:
    """Apply one declaration to ``registry``."""
    if isinstance(stmt, FamilyDecl):
        try:
            registry.register_family(stmt.name, Kind(stmt.kind), stmt.owner)
        except MeasureError as exc:
            raise exc.at(stmt.span)
    elif isinstance(stmt, ScaleDecl):
        p = 0.0 if stmt.offset is None else _snum_value(stmt.offset)
        q = 1.0 if stmt.factor is None else _snum_value(stmt.factor)
        try:
            registry.register_scale(stmt.name, stmt.family, p, q)
        except MeasureError as exc:
            raise exc.at(stmt.span)


def load_registry(program: Program, registry: Optional[Registry] = None) -> Registry:
    """Registry from the declarations of ``program``; other statements are ignored."""
    registry = registry or Registry()
    diags = []
    for stmt in program.statements:
        try:
            declare(stmt, registry)
        except MeasureError as exc:
            diags.append(Diagnostic(exc.code, exc.message, exc.span or stmt.span))
    if diags:
        raise DiagnosticError(diags, program.source)
    return registry


def check_program(program: Program, registry: Optional[Registry] = None) -> CheckResult:
    """Check every statement; an error in one statement does not stop the others."""
    result = CheckResult(registry or Registry())
    reg = result.registry
    env: Dict[str, object] = {}
    for idx, stmt in enumerate(program.statements):
        try:
            if isinstance(stmt, (FamilyDecl, ScaleDecl)):
                declare(stmt, reg)
            elif isinstance(stmt, Let):
                if stmt.name in env:
                    raise MeasureError(E.E_DUP_BINDING,
                                       f"{stmt.name!r} is already bound", stmt.span)
                try:
                    sort = infer_sort(stmt.expr, env, reg)
                except (MeasureError, _Poisoned):
                    env[stmt.name] = POISONED
                    raise
                env[stmt.name] = result.sorts[idx] = sort
            elif isinstance(stmt, Check):
                result.sorts[idx] = infer_sort(stmt.expr, env, reg)
            elif isinstance(stmt, Assert):
                a = infer_sort(stmt.left, env, reg)
                b = infer_sort(stmt.right, env, reg)
                try:
                    compare_sort(a, b)
                except MeasureError as exc:
                    raise exc.at(stmt.cmp_span)
                result.sorts[idx] = a
        except _Poisoned:
            result.failed.add(idx)
        except MeasureError as exc:
            result.failed.add(idx)
            result.diagnostics.append(
                Diagnostic(exc.code, exc.message, exc.span or stmt.span))
    return result

