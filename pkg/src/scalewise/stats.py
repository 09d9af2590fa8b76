"""Descriptive statistics restricted to well-sorted results.

Each statistic is computed with the quantity algebra, so a statistic that
would need an undefined operation (the mean of a point column is fine, its
sum is not) is refused with the error the algebra raises. Results are
expressed on the column's own scale.

Variance is the sample variance (divisor ``n - 1``).
"""

from __future__ import annotations

import csv
import io
import math
import re
from dataclasses import dataclass
from typing import List, Optional, Sequence, Union

from . import errors as E
from .errors import MeasureError
from .quantity import (
    Quantity, apply_binary, binary_sort, difference, mix, point, scalar, sqrt_even_power,
)
from .scales import Family, Kind, Scale, convert
from .sorts import Point, Scalar, sort_to_json

CATALOG = ("count", "mean", "median", "min", "max", "range", "variance", "std",
           "cv", "geomean", "sum", "zscores")

ROLES = ("point", "difference", "scalar")

CITATIONS = {
    E.E_POINT_RATIO: "a ratio of two points is undefined; only ratios of differences are",
    E.E_POINT_SUM: "points cannot be added or multiplied; only differences of points are defined",
    E.E_STD_ZERO: "standardizing needs a nonzero spread",
    E.E_GEOMEAN_DOMAIN: "a geometric mean needs strictly positive values",
    E.E_DIV_ZERO: "the statistic divides by zero for this column",
}

_DECIMAL_RE = re.compile(r"[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?$")


@dataclass(frozen=True)
class Column:
    name: str
    family: Optional[Family]
    scale: Optional[Scale]
    role: str
    values: tuple

    def __post_init__(self):
        if not self.values:
            raise MeasureError(E.E_CSV_PARSE, f"column {self.name!r} has no values")
        if self.role not in ROLES:
            raise ValueError(f"role must be one of {ROLES}")
        kind = self.family.kind if self.family is not None else Kind.ABSOLUTE
        fam = self.family.name if self.family is not None else "(none)"
        if self.role == "point" and kind is not Kind.AFFINE:
            raise MeasureError(E.E_ROLE_KIND,
                               f"point role needs an affine family, {fam!r} is {kind}")
        if self.role == "scalar" and kind is not Kind.ABSOLUTE:
            raise MeasureError(E.E_ROLE_KIND,
                               f"scalar role needs an absolute family, {fam!r} is {kind}")

    @property
    def is_scalar(self) -> bool:
        return self.family is None or self.family.kind is Kind.ABSOLUTE

    def quantities(self) -> List[Quantity]:
        if self.is_scalar:
            return [scalar(v) for v in self.values]
        if self.role == "point":
            return [point(v, self.scale) for v in self.values]
        return [difference(v, self.scale) for v in self.values]


@dataclass(frozen=True)
class Refusal:
    code: str
    message: str

    @property
    def cite(self) -> str:
        return CITATIONS.get(self.code, "")


Outcome = Union[Quantity, List[Quantity], Refusal]


def load_column(text: str, column: str, family: Optional[Family] = None,
                scale: Optional[Scale] = None, role: str = "point") -> Column:
    """Read one numeric column from CSV text with a header row.

    Row numbers in errors count data rows from 1 (the header is not a row).
    """
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise MeasureError(E.E_CSV_PARSE, "empty CSV: a header row is required") from None
    header = [h.strip() for h in header]
    if column not in header:
        raise MeasureError(E.E_NO_COLUMN,
                           f"no column {column!r}; have {', '.join(header)}")
    idx = header.index(column)
    values = []
    for row_no, row in enumerate(reader, start=1):
        if not row:
            continue
        cell = row[idx].strip() if idx < len(row) else ""
        if not _DECIMAL_RE.match(cell):
            raise MeasureError(E.E_CSV_PARSE,
                               f"row {row_no} (line {reader.line_num}): {cell!r} is not a decimal number")
        values.append(float(cell))
    if scale is None and family is not None and family.kind is not Kind.ABSOLUTE:
        scale = family.reference
    if family is not None and family.kind is Kind.ABSOLUTE and role == "difference":
        role = "scalar"
    if family is None:
        role = "scalar"
    return Column(column, family, scale, role, tuple(values))


def _refuse(exc: MeasureError) -> Refusal:
    return Refusal(exc.code, exc.message)


def _on_column_scale(q: Quantity, column: Column) -> Quantity:
    if q.scale is None or column.scale is None:
        return q
    return convert(q, column.scale)


def _sum(qs: Sequence[Quantity]) -> Quantity:
    total = qs[0]
    for q in qs[1:]:
        total = apply_binary("+", total, q)
    return total


def _mean(qs: Sequence[Quantity]) -> Quantity:
    n = len(qs)
    if isinstance(qs[0].sort, Point):
        return mix([1.0 / n] * n, qs)
    return apply_binary("/", _sum(qs), scalar(n))


def _median(qs: Sequence[Quantity]) -> Quantity:
    ordered = sorted(qs, key=lambda q: q.to_reference().value)
    n = len(ordered)
    mid = n // 2
    if n % 2:
        return ordered[mid].to_reference()
    return _mean([ordered[mid - 1], ordered[mid]])


def _variance(qs: Sequence[Quantity]) -> Quantity:
    n = len(qs)
    if n < 2:
        raise MeasureError(E.E_DIV_ZERO, "sample variance needs at least two values")
    m = _mean(qs)
    squares = []
    for q in qs:
        d = apply_binary("-", q, m)
        squares.append(apply_binary("*", d, d))
    return apply_binary("/", _sum(squares), scalar(n - 1))


def _std(qs: Sequence[Quantity]) -> Quantity:
    return sqrt_even_power(_variance(qs))


def _nonzero_std(qs: Sequence[Quantity]) -> Quantity:
    try:
        s = _std(qs)
    except MeasureError as exc:
        raise MeasureError(E.E_STD_ZERO, f"no spread to standardize by ({exc.message})") from None
    if s.value == 0:
        raise MeasureError(E.E_STD_ZERO, "standard deviation is zero")
    return s


def _geomean(qs: Sequence[Quantity]) -> Quantity:
    first = qs[0]
    if isinstance(first.sort, Point):
        raise MeasureError(E.E_POINT_SUM, "a product of points is undefined")
    refs = [q.to_reference() for q in qs]
    if any(q.value <= 0 for q in refs):
        raise MeasureError(E.E_GEOMEAN_DOMAIN, "geometric mean needs all values > 0")
    # The n-th root of a product of n differences is a difference again.
    v = math.exp(math.fsum(math.log(q.value) for q in refs) / len(refs))
    if isinstance(first.sort, Scalar):
        return scalar(v)
    return Quantity(v, first.sort, refs[0].scale)


def compute_stat(column: Column, name: str) -> Outcome:
    """One catalog statistic, or the refusal explaining why it is undefined."""
    if name not in CATALOG:
        raise ValueError(f"unknown statistic {name!r}; catalog is {', '.join(CATALOG)}")
    qs = column.quantities()
    try:
        if name == "count":
            return scalar(len(qs))
        if name == "zscores":
            m = _mean(qs)
            s = _nonzero_std(qs)
            return [apply_binary("/", apply_binary("-", q, m), s) for q in qs]
        if name == "cv":
            if isinstance(qs[0].sort, Point):
                # std is a difference, mean a point: their ratio is a point ratio
                raise MeasureError(E.E_POINT_RATIO,
                                   "coefficient of variation divides by a point (the mean)")
            s = _nonzero_std(qs)
            return apply_binary("/", s, _mean(qs))
        if name == "sum":
            # consult the table even when there is nothing to add
            binary_sort("+", qs[0].sort, qs[0].sort)
            result = _sum(qs)
        elif name == "mean":
            result = _mean(qs)
        elif name == "median":
            result = _median(qs)
        elif name in ("min", "max"):
            pick = min if name == "min" else max
            result = pick(qs, key=lambda q: q.to_reference().value)
        elif name == "range":
            lo = min(qs, key=lambda q: q.to_reference().value)
            hi = max(qs, key=lambda q: q.to_reference().value)
            result = apply_binary("-", hi, lo)
        elif name == "variance":
            result = _variance(qs)
        elif name == "std":
            result = _std(qs)
        else:
            result = _geomean(qs)
    except MeasureError as exc:
        return _refuse(exc)
    return _on_column_scale(result, column)


@dataclass
class StatReport:
    column: Column
    entries: List[tuple]   # (name, outcome)

    @property
    def refusals(self) -> List[str]:
        return [n for n, o in self.entries if isinstance(o, Refusal)]

    def __getitem__(self, name: str) -> Outcome:
        for n, o in self.entries:
            if n == name:
                return o
        raise KeyError(name)

    def to_json(self) -> dict:
        col = self.column
        stats = []
        for name, o in self.entries:
            if isinstance(o, Refusal):
                stats.append({"name": name, "status": "refused", "code": o.code,
                              "cite": o.cite, "message": o.message})
                continue
            d = {"name": name, "status": "ok"}
            if isinstance(o, list):
                d["sort"] = sort_to_json(o[0].sort)
                d["value"] = [q.value for q in o]
            else:
                d["sort"] = sort_to_json(o.sort)
                d["value"] = o.value
                if o.scale is not None:
                    d["scale"] = o.scale.name
            stats.append(d)
        return {
            "column": col.name,
            "family": col.family.name if col.family else None,
            "scale": col.scale.name if col.scale else None,
            "role": col.role,
            "stats": stats,
        }

    def render(self) -> str:
        col = self.column
        fam = col.family.name if col.family else "-"
        lines = [f"column {col.name}  family {fam}  scale {col.scale.name if col.scale else '-'}  "
                 f"role {col.role}  n={len(col.values)}",
                 "variance and std use the sample divisor n-1", ""]
        width = max(len(n) for n in CATALOG)
        for name, o in self.entries:
            if isinstance(o, Refusal):
                text = f"refused  {o.code}: {o.cite}"
            elif isinstance(o, list):
                text = "[" + ", ".join(f"{q.value:.12g}" for q in o) + "]"
            else:
                text = str(o)
            lines.append(f"{name:<{width}}  {text}")
        return "\n".join(lines) + "\n"


def report(column: Column) -> StatReport:
    return StatReport(column, [(name, compute_stat(column, name)) for name in CATALOG])
