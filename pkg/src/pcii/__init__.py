"""Normalized inconsistency indicators for pairwise-comparison matrices."""

__version__ = "0.1.0"

from .core import (  # noqa: E402
    AdditivePCMatrix,
    PCMatrix,
    Triad,
    from_upper_triangle,
    is_consistent,
    new_additive_matrix,
    new_pc_matrix,
    to_additive,
    to_multiplicative,
    triads,
)
from .indicators import (  # noqa: E402
    IndicatorReport,
    additive_kii_triad,
    distance_indicator_triad,
    kii_matrix,
    kii_triad,
    kii_triad_exp,
    relative_error_triad,
    saaty_ci,
    zero_one_indicator,
)

__all__ = [
    "AdditivePCMatrix",
    "IndicatorReport",
    "PCMatrix",
    "Triad",
    "additive_kii_triad",
    "distance_indicator_triad",
    "from_upper_triangle",
    "is_consistent",
    "kii_matrix",
    "kii_triad",
    "kii_triad_exp",
    "new_additive_matrix",
    "new_pc_matrix",
    "relative_error_triad",
    "saaty_ci",
    "to_additive",
    "to_multiplicative",
    "triads",
    "zero_one_indicator",
]
