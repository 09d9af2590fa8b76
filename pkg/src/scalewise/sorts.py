"""Semantic sorts of quantities.

A quantity is either a plain real (``Scalar``), the ``k``-th power of a
difference unit of some family (``Power``; ``k == 1`` is a difference), or a
position in a family's affine space (``Point``).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union


@dataclass(frozen=True)
class Scalar:
    @property
    def family(self) -> Optional[str]:
        return None

    def __str__(self) -> str:
        return "Scalar"


@dataclass(frozen=True)
class Power:
    family: str
    k: int

    def __post_init__(self):
        if self.k == 0:
            raise ValueError("Power with exponent 0 is Scalar; use power_sort()")

    def __str__(self) -> str:
        return f"Power({self.family},{self.k})"


@dataclass(frozen=True)
class Point:
    family: str

    def __str__(self) -> str:
        return f"Point({self.family})"


Sort = Union[Scalar, Power, Point]

SCALAR = Scalar()


def power_sort(family: str, k: int) -> Sort:
    """Power(family, k), collapsing the zero exponent to Scalar."""
    return SCALAR if k == 0 else Power(family, k)


def exponent(sort: Sort) -> int:
    # Scalars sit at grade 0 of every family.
    return sort.k if isinstance(sort, Power) else 0


def sort_to_json(sort: Sort) -> dict:
    if isinstance(sort, Scalar):
        return {"tag": "scalar"}
    if isinstance(sort, Point):
        return {"tag": "point", "family": sort.family}
    return {"tag": "power", "family": sort.family, "power": sort.k}
