"""Families, named scales and the admissible transformation group.

Scale changes live here and only here. A :class:`Transformation` maps scale
readings to scale readings (``x -> p + q*x``); it is composed and inverted
with :func:`compose` and :func:`invert`, never by multiplying quantities.

A scale with offset ``p`` and factor ``q`` reads a point at coordinate ``x``
as reference coordinate ``p + q*x``; a ``Power(f, k)`` coordinate is scaled
by ``q**k``.
"""

from __future__ import annotations

import dataclasses
import enum
import json
import math
import random
from dataclasses import dataclass
from typing import TYPE_CHECKING, Dict, Iterator, List, Optional

from .errors import (
    E_BAD_FACTOR, E_DUP_FAMILY, E_DUP_SCALE, E_FAMILY_MIX, E_OFFSET_ON_LINEAR,
    E_SCALAR_CONVERT, E_SCALE_ON_ABSOLUTE, E_UNKNOWN_FAMILY, E_UNKNOWN_SCALE,
    MeasureError,
)
from .sorts import Point, Power, Sort

if TYPE_CHECKING:
    from .quantity import Quantity

__all__ = [
    "Kind", "Family", "Scale", "Transformation", "Registry",
    "compose", "invert", "identity", "random_admissible",
    "convert", "apply_transformation", "act",
]


class Kind(str, enum.Enum):
    AFFINE = "affine"    # no absolute zero: points, differences, scalars
    LINEAR = "linear"    # absolute zero, free unit: differences and scalars
    ABSOLUTE = "absolute"  # zero and unit fixed: scalars only

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class Family:
    name: str
    kind: Kind
    owner: Optional[str] = None

    @property
    def admits_points(self) -> bool:
        return self.kind is Kind.AFFINE

    @property
    def admits_powers(self) -> bool:
        return self.kind is not Kind.ABSOLUTE

    @property
    def reference(self) -> "Scale":
        return Scale(f"{self.name}.ref", self, 0.0, 1.0)


@dataclass(frozen=True)
class Scale:
    name: str
    family: Family
    offset: float
    factor: float

    def to_reference(self, x: float, sort: Sort) -> float:
        if isinstance(sort, Point):
            return self.offset + self.factor * x
        return self.factor ** sort.k * x

    def from_reference(self, x: float, sort: Sort) -> float:
        if isinstance(sort, Point):
            return (x - self.offset) / self.factor
        return x / self.factor ** sort.k

    def as_transformation(self) -> "Transformation":
        """The reading-to-reference map of this scale."""
        return Transformation(self.offset, self.factor, self.family)

    @property
    def is_reference(self) -> bool:
        return self.offset == 0.0 and self.factor == 1.0


def _check_admissible(family: Family, p: float, q: float) -> None:
    if not (math.isfinite(p) and math.isfinite(q)):
        raise MeasureError(E_BAD_FACTOR, f"non-finite scale constants ({p}, {q})")
    if q <= 0:
        raise MeasureError(E_BAD_FACTOR,
                           f"factor must be positive to preserve order, got {q}")
    if family.kind is Kind.LINEAR and p != 0:
        raise MeasureError(E_OFFSET_ON_LINEAR,
                           f"linear family {family.name!r} has a fixed zero; offset {p} not allowed")
    if family.kind is Kind.ABSOLUTE and (p != 0 or q != 1):
        raise MeasureError(E_SCALE_ON_ABSOLUTE,
                           f"absolute family {family.name!r} admits only the identity")


@dataclass(frozen=True)
class Transformation:
    """An admissible change of scale ``x -> p + q*x`` for one family."""

    p: float
    q: float
    family: Family

    def __post_init__(self):
        _check_admissible(self.family, self.p, self.q)


def identity(family: Family) -> Transformation:
    return Transformation(0.0, 1.0, family)


def compose(t2: Transformation, t1: Transformation) -> Transformation:
    """``t2 after t1``."""
    if t2.family != t1.family:
        raise MeasureError(E_FAMILY_MIX,
                           f"cannot compose maps of {t2.family.name!r} and {t1.family.name!r}")
    return Transformation(t2.p + t2.q * t1.p, t2.q * t1.q, t1.family)


def invert(t: Transformation) -> Transformation:
    return Transformation(-t.p / t.q, 1.0 / t.q, t.family)


def random_admissible(family: Family, seed) -> Transformation:
    """Draw an admissible map for ``family``, deterministically from ``seed``.

    Factors are log-uniform on [0.1, 10]; affine offsets uniform on
    [-100, 100].
    """
    if family.kind is Kind.ABSOLUTE:
        return identity(family)
    rng = random.Random(seed)
    q = 10.0 ** rng.uniform(-1.0, 1.0)
    p = rng.uniform(-100.0, 100.0) if family.kind is Kind.AFFINE else 0.0
    return Transformation(p, q, family)


def act(t: Transformation, x: float, sort: Sort) -> float:
    """How a coordinate of the given sort responds to ``t``."""
    if isinstance(sort, Point):
        return t.p + t.q * x
    if isinstance(sort, Power):
        return t.q ** sort.k * x
    return x


def apply_transformation(t: Transformation, a: "Quantity") -> "Quantity":
    fam = a.sort.family
    if fam is None:
        return a
    if fam != t.family.name:
        raise MeasureError(E_FAMILY_MIX,
                           f"transformation of {t.family.name!r} applied to {a.sort}")
    return dataclasses.replace(a, value=act(t, a.value, a.sort))


def convert(a: "Quantity", target: Scale) -> "Quantity":
    if a.scale is None:
        raise MeasureError(E_SCALAR_CONVERT, "scalars carry no scale to convert")
    if a.scale.family != target.family:
        raise MeasureError(E_FAMILY_MIX,
                           f"cannot convert {a.sort} to scale {target.name!r} of "
                           f"family {target.family.name!r}")
    src = a.scale
    if isinstance(a.sort, Point):
        x = ((src.offset - target.offset) + src.factor * a.value) / target.factor
    else:
        x = (src.factor / target.factor) ** a.sort.k * a.value
    return dataclasses.replace(a, value=x, scale=target)


class Registry:
    """Append-only table of families and their scales.

    Scale names are global so that source text can say ``20 @C`` without
    naming the family.
    """

    def __init__(self):
        self._families: Dict[str, Family] = {}
        self._scales: Dict[str, Scale] = {}

    def register_family(self, name: str, kind, owner: Optional[str] = None) -> Family:
        if name in self._families:
            raise MeasureError(E_DUP_FAMILY, f"family {name!r} already declared")
        fam = Family(name, Kind(kind), owner)
        self._families[name] = fam
        self._scales[fam.reference.name] = fam.reference
        return fam

    def register_scale(self, name: str, family: str, p: float = 0.0, q: float = 1.0) -> Scale:
        fam = self.family(family)
        if name in self._scales:
            raise MeasureError(E_DUP_SCALE, f"scale {name!r} already declared")
        if fam.kind is Kind.ABSOLUTE:
            raise MeasureError(E_SCALE_ON_ABSOLUTE,
                               f"absolute family {family!r} has no alternative scales")
        p, q = float(p), float(q)
        _check_admissible(fam, p, q)
        scale = Scale(name, fam, p, q)
        self._scales[name] = scale
        return scale

    def family(self, name: str) -> Family:
        try:
            return self._families[name]
        except KeyError:
            raise MeasureError(E_UNKNOWN_FAMILY, f"unknown family {name!r}") from None

    def scale(self, name: str) -> Scale:
        try:
            return self._scales[name]
        except KeyError:
            raise MeasureError(E_UNKNOWN_SCALE, f"unknown scale {name!r}") from None

    def has_scale(self, name: str) -> bool:
        return name in self._scales

    @property
    def families(self) -> List[Family]:
        return list(self._families.values())

    def scales(self, family: Optional[str] = None) -> Iterator[Scale]:
        for s in self._scales.values():
            if family is None or s.family.name == family:
                yield s

    def display_scale(self, family: str) -> Scale:
        """The first declared alias of the reference scale, else the implicit one."""
        fam = self.family(family)
        for s in self.scales(family):
            if s.is_reference and s.name != fam.reference.name:
                return s
        return fam.reference

    def convert(self, a: "Quantity", target: str) -> "Quantity":
        return convert(a, self.scale(target))

    def conversion(self, source: str, target: str) -> Transformation:
        """The transformation taking readings on ``source`` to readings on ``target``."""
        s, t = self.scale(source), self.scale(target)
        return compose(invert(t.as_transformation()), s.as_transformation())

    def to_json(self) -> dict:
        fams = []
        for f in self._families.values():
            d = {"name": f.name, "kind": f.kind.value}
            if f.owner is not None:
                d["owner"] = f.owner
            fams.append(d)
        scales = [
            {"name": s.name, "family": s.family.name,
             "offset": format(s.offset, ".17g"), "factor": format(s.factor, ".17g")}
            for s in self._scales.values()
        ]
        return {"families": fams, "scales": scales}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)
