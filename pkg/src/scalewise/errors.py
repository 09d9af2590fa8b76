"""Error codes shared by the value algebra, the registry and the language."""

from __future__ import annotations

# Value algebra.
E_POINT_RATIO = "E_POINT_RATIO"
E_POINT_SUM = "E_POINT_SUM"
E_FAMILY_MIX = "E_FAMILY_MIX"
E_POWER_MISMATCH = "E_POWER_MISMATCH"
E_DIV_ZERO = "E_DIV_ZERO"
E_POINT_NEGATE = "E_POINT_NEGATE"
E_POINT_POWER = "E_POINT_POWER"
E_ODD_POWER_SQRT = "E_ODD_POWER_SQRT"
E_NEGATIVE_SQRT = "E_NEGATIVE_SQRT"
E_WEIGHT_SUM = "E_WEIGHT_SUM"
E_MIX_SORT = "E_MIX_SORT"
E_COMPARE_SORT = "E_COMPARE_SORT"
E_KIND_SORT = "E_KIND_SORT"
E_NONFINITE = "E_NONFINITE"

# Registry.
E_DUP_FAMILY = "E_DUP_FAMILY"
E_DUP_SCALE = "E_DUP_SCALE"
E_BAD_FACTOR = "E_BAD_FACTOR"
E_OFFSET_ON_LINEAR = "E_OFFSET_ON_LINEAR"
E_SCALE_ON_ABSOLUTE = "E_SCALE_ON_ABSOLUTE"
E_SCALAR_CONVERT = "E_SCALAR_CONVERT"
E_UNKNOWN_FAMILY = "E_UNKNOWN_FAMILY"
E_UNKNOWN_SCALE = "E_UNKNOWN_SCALE"

# Language.
E_SYNTAX = "E_SYNTAX"
E_UNBOUND_NAME = "E_UNBOUND_NAME"
E_DUP_BINDING = "E_DUP_BINDING"
E_ASSERT_FAILED = "E_ASSERT_FAILED"
W_RAW_MODE = "W_RAW_MODE"

# Statistics.
E_CSV_PARSE = "E_CSV_PARSE"
E_NO_COLUMN = "E_NO_COLUMN"
E_ROLE_KIND = "E_ROLE_KIND"
E_STD_ZERO = "E_STD_ZERO"
E_GEOMEAN_DOMAIN = "E_GEOMEAN_DOMAIN"

# Codes that come from the sort table rather than from values.
SORT_ERRORS = frozenset({
    E_POINT_RATIO, E_POINT_SUM, E_FAMILY_MIX, E_POWER_MISMATCH,
    E_POINT_NEGATE, E_POINT_POWER, E_ODD_POWER_SQRT, E_MIX_SORT,
    E_COMPARE_SORT, E_KIND_SORT,
})


class MeasureError(Exception):
    """An operation on scale values (or a declaration) is not defined.

    ``span`` is filled in by the language layer when the failing operation
    can be traced back to source text.
    """

    def __init__(self, code: str, message: str, span=None):
        super().__init__(f"{code}: {message}")
        self.code = code
        self.message = message
        self.span = span

    def at(self, span) -> "MeasureError":
        if self.span is None:
            self.span = span
        return self
