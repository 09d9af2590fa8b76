"""Quantities and the table of defined operations on scale values.

Points admit only the affine operations (point - point, point +/- difference,
weighted mixing with weights summing to one). Scalars and ``Power`` sorts
form a graded field: ``Power(f, k) * Power(f, m)`` is ``Power(f, k + m)``,
and a scalar is the grade-0 element of every family.

Every operation rewrites its operands to the family reference scale first,
so results are reference-scale readings.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

from . import errors as E
from .errors import MeasureError
from .scales import Scale
from .sorts import SCALAR, Point, Power, Scalar, Sort, exponent, power_sort

__all__ = [
    "Quantity", "scalar", "point", "difference",
    "binary_sort", "apply_binary", "negate", "power_int", "sqrt_even_power",
    "mix", "compare", "compare_sort", "negate_sort", "power_sort_of",
    "close", "REL_TOL", "ABS_TOL",
]

REL_TOL = 1e-9
ABS_TOL = 1e-12
WEIGHT_TOL = 1e-9

OPS = ("+", "-", "*", "/")
CMPS = ("==", "!=", "<", "<=", ">", ">=")


@dataclass(frozen=True)
class Quantity:
    value: float
    sort: Sort = SCALAR
    scale: Optional[Scale] = None

    def __post_init__(self):
        if not math.isfinite(self.value):
            raise MeasureError(E.E_NONFINITE, f"non-finite value {self.value}")
        fam = self.sort.family
        if fam is None:
            if self.scale is not None:
                raise ValueError("scalars carry no scale")
            return
        if self.scale is None or self.scale.family.name != fam:
            raise ValueError(f"{self.sort} needs a scale of family {fam!r}")
        family = self.scale.family
        if isinstance(self.sort, Point) and not family.admits_points:
            raise MeasureError(E.E_KIND_SORT,
                               f"{family.kind} family {fam!r} has no points (no free zero)")
        if isinstance(self.sort, Power) and not family.admits_powers:
            raise MeasureError(E.E_KIND_SORT,
                               f"absolute family {fam!r} has only scalar values")

    def to_reference(self) -> "Quantity":
        if self.scale is None or self.scale.is_reference:
            return self
        ref = self.scale.family.reference
        return Quantity(self.scale.to_reference(self.value, self.sort), self.sort, ref)

    def __add__(self, other):
        return apply_binary("+", self, _lift(other))

    def __radd__(self, other):
        return apply_binary("+", _lift(other), self)

    def __sub__(self, other):
        return apply_binary("-", self, _lift(other))

    def __rsub__(self, other):
        return apply_binary("-", _lift(other), self)

    def __mul__(self, other):
        return apply_binary("*", self, _lift(other))

    def __rmul__(self, other):
        return apply_binary("*", _lift(other), self)

    def __truediv__(self, other):
        return apply_binary("/", self, _lift(other))

    def __rtruediv__(self, other):
        return apply_binary("/", _lift(other), self)

    def __neg__(self):
        return negate(self)

    def __pow__(self, n: int):
        return power_int(self, n)

    def __str__(self) -> str:
        v = f"{self.value:.12g}"
        if isinstance(self.sort, Scalar):
            return v
        if isinstance(self.sort, Point):
            return f"{v} @{self.scale.name}"
        if self.sort.k == 1:
            return f"{v} d@{self.scale.name}"
        return f"{v} d@{self.scale.name}^{self.sort.k}"


def _lift(x) -> Quantity:
    if isinstance(x, Quantity):
        return x
    if isinstance(x, (int, float)):
        return Quantity(float(x))
    raise TypeError(f"cannot combine a Quantity with {type(x).__name__}")


def scalar(value: float) -> Quantity:
    return Quantity(float(value))


def point(value: float, scale: Scale) -> Quantity:
    return Quantity(float(value), Point(scale.family.name), scale)


def difference(value: float, scale: Scale, k: int = 1) -> Quantity:
    """A reading of ``Power(family, k)``; ``k=1`` is a plain difference."""
    return Quantity(float(value), Power(scale.family.name, k), scale)


def binary_sort(op: str, a: Sort, b: Sort) -> Sort:
    """Result sort of ``a op b`` or the :class:`MeasureError` naming why not.

    Point rules are consulted before family agreement: a point ratio or a
    sum of points is undefined whatever the families involved.
    """
    pa, pb = isinstance(a, Point), isinstance(b, Point)
    if pa or pb:
        if op == "/":
            raise MeasureError(E.E_POINT_RATIO,
                               f"ratio involving a point is undefined ({a} / {b}); "
                               f"divide differences instead")
        if op == "*":
            raise MeasureError(E.E_POINT_SUM,
                               f"product involving a point is undefined ({a} * {b})")
        if pa and pb and op == "-":
            result = Power(a.family, 1)
        elif pa and isinstance(b, Power) and b.k == 1:
            result = Point(a.family)
        elif pb and isinstance(a, Power) and a.k == 1 and op == "+":
            result = Point(b.family)
        else:
            raise MeasureError(E.E_POINT_SUM,
                               f"{a} {op} {b} is undefined; a point moves only by a difference")
        if a.family != b.family:
            raise MeasureError(E.E_FAMILY_MIX,
                               f"{a} {op} {b} mixes families {a.family!r} and {b.family!r}")
        return result

    fa, fb = a.family, b.family
    if fa is not None and fb is not None and fa != fb:
        raise MeasureError(E.E_FAMILY_MIX,
                           f"{a} {op} {b} mixes families {fa!r} and {fb!r}")
    fam = fa or fb
    ka, kb = exponent(a), exponent(b)
    if op in ("+", "-"):
        if ka != kb:
            raise MeasureError(E.E_POWER_MISMATCH,
                               f"cannot add or subtract {a} and {b}")
        return a
    if op == "*":
        return power_sort(fam, ka + kb)
    if op == "/":
        return power_sort(fam, ka - kb)
    raise ValueError(f"unknown operator {op!r}")


def _result(value: float, sort: Sort, family_scale: Optional[Scale]) -> Quantity:
    if isinstance(sort, Scalar):
        return Quantity(value)
    return Quantity(value, sort, family_scale.family.reference)


def apply_binary(op: str, a: Quantity, b: Quantity) -> Quantity:
    sort = binary_sort(op, a.sort, b.sort)
    a, b = a.to_reference(), b.to_reference()
    x, y = a.value, b.value
    if op == "+":
        v = x + y
    elif op == "-":
        v = x - y
    elif op == "*":
        v = x * y
    else:
        if y == 0:
            raise MeasureError(E.E_DIV_ZERO, f"division by zero ({a} / {b})")
        v = x / y
    return _result(v, sort, a.scale or b.scale)


def negate_sort(a: Sort) -> Sort:
    if isinstance(a, Point):
        raise MeasureError(E.E_POINT_NEGATE,
                           f"cannot negate {a}: an affine space has no origin to reflect through")
    return a


def negate(a: Quantity) -> Quantity:
    negate_sort(a.sort)
    a = a.to_reference()
    return Quantity(-a.value, a.sort, a.scale)


def power_sort_of(a: Sort, n: int) -> Sort:
    if isinstance(a, Point):
        raise MeasureError(E.E_POINT_POWER, f"powers of {a} are undefined")
    if isinstance(a, Scalar):
        return a
    return power_sort(a.family, a.k * n)


def power_int(a: Quantity, n: int) -> Quantity:
    sort = power_sort_of(a.sort, n)
    a = a.to_reference()
    if n < 0 and a.value == 0:
        raise MeasureError(E.E_DIV_ZERO, f"negative power of zero ({a} ^ {n})")
    try:
        v = a.value ** n
    except OverflowError:
        raise MeasureError(E.E_NONFINITE, f"{a} ^ {n} overflows") from None
    return _result(v, sort, a.scale)


def sqrt_sort(a: Sort) -> Sort:
    if isinstance(a, Point):
        raise MeasureError(E.E_POINT_POWER, f"square root of {a} is undefined")
    if isinstance(a, Power):
        if a.k % 2:
            raise MeasureError(E.E_ODD_POWER_SQRT,
                               f"square root of {a} would have a fractional exponent")
        return power_sort(a.family, a.k // 2)
    return a


def sqrt_even_power(a: Quantity) -> Quantity:
    sort = sqrt_sort(a.sort)
    a = a.to_reference()
    if a.value < 0:
        raise MeasureError(E.E_NEGATIVE_SQRT, f"square root of negative value {a.value}")
    return _result(math.sqrt(a.value), sort, a.scale)


def mix(weights: Sequence[float], points: Sequence[Quantity]) -> Quantity:
    """Affine combination ``sum(w_i * x_i)`` of points with weights summing to one."""
    if len(weights) != len(points) or not points:
        raise ValueError("mix needs equally many weights and points, at least one")
    family = None
    for q in points:
        if not isinstance(q.sort, Point) or (family is not None and q.sort.family != family):
            raise MeasureError(E.E_MIX_SORT,
                               f"mix takes points of one family, got {q.sort}")
        family = q.sort.family
    total = math.fsum(weights)
    if abs(total - 1.0) > WEIGHT_TOL:
        raise MeasureError(E.E_WEIGHT_SUM,
                           f"mix weights sum to {total!r}, not 1")
    refs = [q.to_reference() for q in points]
    v = sum(w * q.value for w, q in zip(weights, refs))
    return Quantity(v, refs[0].sort, refs[0].scale)


def close(x: float, y: float) -> bool:
    return math.isclose(x, y, rel_tol=REL_TOL, abs_tol=ABS_TOL)


def compare_sort(a: Sort, b: Sort) -> None:
    if a == b:
        return
    if a.family is not None and b.family is not None and a.family != b.family:
        raise MeasureError(E.E_FAMILY_MIX, f"cannot compare {a} with {b}")
    raise MeasureError(E.E_COMPARE_SORT, f"cannot compare {a} with {b}")


def compare(cmp: str, a: Quantity, b: Quantity) -> bool:
    """Tolerant comparison; both sides must have the same sort."""
    compare_sort(a.sort, b.sort)
    x, y = a.to_reference().value, b.to_reference().value
    eq = close(x, y)
    if cmp == "==":
        return eq
    if cmp == "!=":
        return not eq
    if cmp == "<":
        return x < y and not eq
    if cmp == "<=":
        return x < y or eq
    if cmp == ">":
        return x > y and not eq
    if cmp == ">=":
        return x > y or eq
    raise ValueError(f"unknown comparison {cmp!r}")
