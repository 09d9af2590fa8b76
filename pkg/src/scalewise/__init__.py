"""Typed arithmetic on measurement scale values.

Points of affine families (temperatures, dates, preferences) admit only the
affine operations; differences and scalars form a graded field. Scale changes
are a separate group acting on values, never part of the value algebra.
"""

from .errors import MeasureError
from .quantity import (
    Quantity, apply_binary, difference, mix, negate, point, power_int, scalar,
    sqrt_even_power,
)
from .scales import (
    Family, Kind, Registry, Scale, Transformation, apply_transformation, compose,
    convert, identity, invert, random_admissible,
)
from .sorts import SCALAR, Point, Power, Scalar, Sort

__version__ = "0.1.0"

__all__ = [
    "MeasureError", "Quantity", "apply_binary", "difference", "mix", "negate",
    "point", "power_int", "scalar", "sqrt_even_power", "Family", "Kind",
    "Registry", "Scale", "Transformation", "apply_transformation", "compose",
    "convert", "identity", "invert", "random_admissible", "SCALAR", "Point",
    "Power", "Scalar", "Sort",
]
