"""Randomized meaningfulness oracle.

A statement about scale values is meaningful when moving every input to
another admissible scale moves the result exactly as its sort says it should:
points by ``p + q*x``, ``Power(f, k)`` values by ``q**k``, scalars and truth
values not at all. The oracle samples admissible transformations and looks
for a counterexample.

``typed`` mode evaluates with the checked quantity algebra. ``raw`` mode
erases sorts and evaluates with plain float arithmetic, so undefined
operations (point ratios, point sums) can be exhibited as dependent on the
arbitrary choice of scale.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional

from . import errors as E
from .errors import MeasureError
from .lang.checker import POISONED, check_program, infer_sort
from .lang.diagnostics import Diagnostic
from .lang.evaluator import eval_expr, literal_value
from .lang.nodes import (
    Assert, Binary, Check, Group, Let, Mix, Name, Neg, Number, Pow, Program, walk,
)
from .lang.parser import parse_expression
from .quantity import Quantity, close, compare
from .scales import Family, Registry, Transformation, act, apply_transformation, random_admissible
from .sorts import SCALAR, Point, Sort

MEANINGFUL = "meaningful"
NOT_MEANINGFUL = "not_meaningful"
INDETERMINATE = "indeterminate"

DEFAULT_TOLERANCE = 1e-6
# Expected values smaller than this are compared absolutely, giving an
# absolute floor of 1e-9 at the default tolerance.
DEVIATION_FLOOR = 1e-3


@dataclass(frozen=True)
class Comparison:
    """An assertion ``left cmp right`` viewed as a truth-valued expression."""

    left: object
    cmp: str
    right: object


@dataclass
class Witness:
    trial: int
    transformations: Dict[str, Transformation]
    y: float
    y_transformed: float
    expected: float
    deviation: float

    def to_json(self) -> dict:
        d = {}
        if self.transformations:
            name = sorted(self.transformations)[0]
            t = self.transformations[name]
            d.update(p=t.p, q=t.q, family=name)
        d.update(y=self.y, y_transformed=self.y_transformed,
                 expected=self.expected, deviation=self.deviation, trial=self.trial)
        if len(self.transformations) > 1:
            d["transformations"] = [
                {"family": n, "p": t.p, "q": t.q}
                for n, t in sorted(self.transformations.items())
            ]
        return d


@dataclass
class MeaningVerdict:
    status: str
    trials: int
    witness: Optional[Witness] = None

    @property
    def meaningful(self) -> bool:
        return self.status == MEANINGFUL


def deviation(actual: float, expected: float) -> float:
    return abs(actual - expected) / max(abs(expected), DEVIATION_FLOOR)


def _as_expr(expr):
    return parse_expression(expr) if isinstance(expr, str) else expr


def _subexprs(expr):
    if isinstance(expr, Comparison):
        yield from walk(expr.left)
        yield from walk(expr.right)
    else:
        yield from walk(expr)


def families_of(expr, bindings: Mapping[str, Quantity], registry: Registry) -> List[Family]:
    """Families whose scale choice the value of ``expr`` could depend on."""
    names = set()
    for node in _subexprs(expr):
        if isinstance(node, Number) and node.unit is not None and registry.has_scale(node.scale):
            names.add(registry.scale(node.scale).family.name)
        elif isinstance(node, Name) and node.name in bindings:
            fam = bindings[node.name].sort.family
            if fam is not None:
                names.add(fam)
    return [registry.family(n) for n in sorted(names)]


def trial_transformations(families: List[Family], seed, trial: int) -> Dict[str, Transformation]:
    # Each (seed, trial, family) gets its own stream: results do not depend on
    # which other families are present or in which order trials run.
    return {f.name: random_admissible(f, f"{seed}:{trial}:{f.name}") for f in families}


# typed evaluation

def _typed_mover(ts: Mapping[str, Transformation]):
    def move(q: Quantity) -> Quantity:
        fam = q.sort.family
        q = q.to_reference()
        return apply_transformation(ts[fam], q) if fam in ts else q
    return move


def _typed_value(expr, bindings, registry, ts) -> float:
    move = _typed_mover(ts) if ts is not None else None
    env = bindings if move is None else {k: move(v) for k, v in bindings.items()}
    if isinstance(expr, Comparison):
        a = eval_expr(expr.left, env, registry, move).to_reference()
        b = eval_expr(expr.right, env, registry, move).to_reference()
        return 1.0 if compare(expr.cmp, a, b) else 0.0
    return eval_expr(expr, env, registry, move).to_reference().value


# raw evaluation: sorts only steer how inputs move, arithmetic is on floats

def _raw_eval(expr, env: Mapping[str, float], registry: Registry, move) -> float:
    if isinstance(expr, Number):
        if expr.unit is None:
            return expr.value
        q = literal_value(expr, registry).to_reference()
        return move(q.value, q.sort)
    if isinstance(expr, Name):
        try:
            return env[expr.name]
        except KeyError:
            raise MeasureError(E.E_UNBOUND_NAME, f"unbound name {expr.name!r}", expr.span) from None
    if isinstance(expr, Group):
        return _raw_eval(expr.inner, env, registry, move)
    if isinstance(expr, Neg):
        return -_raw_eval(expr.operand, env, registry, move)
    if isinstance(expr, Pow):
        x = _raw_eval(expr.base, env, registry, move)
        if x == 0 and expr.exponent < 0:
            raise MeasureError(E.E_DIV_ZERO, "negative power of zero", expr.span)
        return _finite(x ** expr.exponent, expr)
    if isinstance(expr, Mix):
        return _finite(sum(w.value * _raw_eval(e, env, registry, move) for w, e in expr.terms), expr)
    if isinstance(expr, Binary):
        x = _raw_eval(expr.left, env, registry, move)
        y = _raw_eval(expr.right, env, registry, move)
        if expr.op == "+":
            return _finite(x + y, expr)
        if expr.op == "-":
            return _finite(x - y, expr)
        if expr.op == "*":
            return _finite(x * y, expr)
        if y == 0:
            raise MeasureError(E.E_DIV_ZERO, "division by zero", expr.span)
        return _finite(x / y, expr)
    raise TypeError(f"not an expression: {expr!r}")


def _finite(x: float, node) -> float:
    if not math.isfinite(x):
        raise MeasureError(E.E_NONFINITE, "non-finite intermediate value", node.span)
    return x


def _raw_value(expr, bindings, registry, ts) -> float:
    if ts is None:
        def move(x, sort):
            return x
    else:
        def move(x, sort):
            t = ts.get(sort.family)
            return x if t is None else act(t, x, sort)
    env = {}
    for name, q in bindings.items():
        r = q.to_reference()
        env[name] = move(r.value, r.sort)
    if isinstance(expr, Comparison):
        a = _raw_eval(expr.left, env, registry, move)
        b = _raw_eval(expr.right, env, registry, move)
        return 1.0 if _raw_compare(expr.cmp, a, b) else 0.0
    return _raw_eval(expr, env, registry, move)


def _raw_compare(cmp: str, x: float, y: float) -> bool:
    eq = close(x, y)
    return {"==": eq, "!=": not eq, "<": x < y and not eq, "<=": x < y or eq,
            ">": x > y and not eq, ">=": x > y or eq}[cmp]


def expected_sort(expr, bindings: Mapping[str, Quantity], registry: Registry) -> Sort:
    """Sort the checker assigns to ``expr``, or Scalar when it is untypeable."""
    env = {k: v.sort for k, v in bindings.items()}
    try:
        if isinstance(expr, Comparison):
            return SCALAR
        return infer_sort(expr, env, registry)
    except MeasureError:
        return SCALAR


def check_trial(expr, bindings: Mapping[str, Quantity], transformations: Mapping[str, Transformation],
                registry: Registry, mode: str = "typed") -> float:
    """Relative deviation of the transformed result from the sort-predicted one."""
    expr = _as_expr(expr)
    value = _typed_value if mode == "typed" else _raw_value
    sort = expected_sort(expr, bindings, registry)
    y = value(expr, bindings, registry, None)
    y2 = value(expr, bindings, registry, transformations)
    t = transformations.get(sort.family) if sort.family is not None else None
    expected = y if t is None else act(t, y, sort)
    return deviation(y2, expected)


def check_meaningful(expr, bindings: Mapping[str, Quantity], registry: Registry,
                     n_trials: int = 20, seed=0, tolerance: float = DEFAULT_TOLERANCE,
                     mode: str = "typed") -> MeaningVerdict:
    """Sample ``n_trials`` admissible re-scalings looking for a counterexample.

    Trials whose transformed evaluation fails (say, a denominator moved to
    zero) are skipped; if every trial is skipped the verdict is
    indeterminate. Errors in the untransformed evaluation propagate.
    """
    if n_trials < 1:
        raise ValueError("n_trials must be at least 1")
    if mode not in ("typed", "raw"):
        raise ValueError(f"unknown mode {mode!r}")
    expr = _as_expr(expr)
    value = _typed_value if mode == "typed" else _raw_value
    sort = expected_sort(expr, bindings, registry)
    y = value(expr, bindings, registry, None)
    families = families_of(expr, bindings, registry)
    completed = 0
    for i in range(n_trials):
        ts = trial_transformations(families, seed, i)
        try:
            y2 = value(expr, bindings, registry, ts)
        except MeasureError:
            continue
        completed += 1
        t = ts.get(sort.family) if sort.family is not None else None
        expected = y if t is None else act(t, y, sort)
        dev = deviation(y2, expected)
        if dev > tolerance:
            return MeaningVerdict(NOT_MEANINGFUL, completed,
                                  Witness(i, ts, y, y2, expected, dev))
    if completed == 0:
        return MeaningVerdict(INDETERMINATE, 0)
    return MeaningVerdict(MEANINGFUL, completed)


def replay(witness: Witness, expr, bindings: Mapping[str, Quantity], registry: Registry,
           mode: str = "typed") -> float:
    """Recompute a witness's deviation from its recorded transformations."""
    return check_trial(expr, bindings, witness.transformations, registry, mode)


@dataclass
class StatementVerdict:
    stmt_index: int
    kind: str
    mode: str
    verdict: MeaningVerdict
    diagnostics: List[Diagnostic] = field(default_factory=list)

    def to_json(self) -> dict:
        d = {"statement": self.stmt_index, "kind": self.kind, "mode": self.mode,
             "status": self.verdict.status, "trials": self.verdict.trials}
        if self.verdict.witness is not None:
            d["witness"] = self.verdict.witness.to_json()
        return d


def _inline(expr, defs: Mapping[str, object]):
    """Substitute let definitions so that only literals remain free."""
    if isinstance(expr, Name):
        inner = defs.get(expr.name)
        return expr if inner is None else Group(inner, span=expr.span)
    if isinstance(expr, Group):
        return Group(_inline(expr.inner, defs), span=expr.span)
    if isinstance(expr, Binary):
        return Binary(expr.op, _inline(expr.left, defs), _inline(expr.right, defs), span=expr.span)
    if isinstance(expr, Neg):
        return Neg(_inline(expr.operand, defs), span=expr.span)
    if isinstance(expr, Pow):
        return Pow(_inline(expr.base, defs), expr.exponent, span=expr.span)
    if isinstance(expr, Mix):
        return Mix(tuple((w, _inline(e, defs)) for w, e in expr.terms), span=expr.span)
    return expr


def survey_program(program: Program, n_trials: int = 20, seed=0,
                   tolerance: float = DEFAULT_TOLERANCE) -> List[StatementVerdict]:
    """One verdict per check/assert statement.

    Statements that pass sort checking are tested in typed mode; statements
    the checker rejects are tested in raw mode, with a warning, so a static
    rejection comes with a dynamic demonstration.
    """
    checked = check_program(program)
    registry = checked.registry
    defs: Dict[str, object] = {}
    out = []
    for idx, stmt in enumerate(program.statements):
        if isinstance(stmt, Let):
            defs.setdefault(stmt.name, _inline(stmt.expr, defs))
            continue
        if isinstance(stmt, Check):
            expr, kind = _inline(stmt.expr, defs), "check"
        elif isinstance(stmt, Assert):
            expr = Comparison(_inline(stmt.left, defs), stmt.cmp, _inline(stmt.right, defs))
            kind = "assert"
        else:
            continue
        diags = []
        mode = "typed"
        if idx in checked.failed:
            mode = "raw"
            diags.append(Diagnostic(E.W_RAW_MODE,
                                    "statement is ill-sorted; testing its type-erased form",
                                    stmt.span, "warning"))
        try:
            verdict = check_meaningful(expr, {}, registry, n_trials, seed, tolerance, mode)
        except MeasureError as exc:
            diags.append(Diagnostic(exc.code, exc.message, exc.span or stmt.span))
            verdict = MeaningVerdict(INDETERMINATE, 0)
        out.append(StatementVerdict(idx, kind, mode, verdict, diags))
    return out
