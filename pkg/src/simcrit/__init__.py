"""Exact dimensional analysis and similarity criteria."""

__version__ = "0.1.0"

from .dims import (  # noqa: E402
    DimensionSystem,
    DimensionVector,
    LMTTheta,
    Quantity,
    dv_combine,
    dv_is_dimensionless,
)
from .pi import (  # noqa: E402
    BasisSelection,
    DimensionalMatrix,
    PiGroup,
    check_basis,
    derive_exponents_cramer,
    derive_exponents_nullspace,
    derive_pi_groups,
    format_pi_group,
)
from .similarity import CaseAssignment, check_similarity, eval_pi, solve_unknown  # noqa: E402
from .units import ParsedUnit, UnitRegistry, default_registry, parse_unit  # noqa: E402

__all__ = [
    "BasisSelection",
    "CaseAssignment",
    "DimensionSystem",
    "DimensionVector",
    "DimensionalMatrix",
    "LMTTheta",
    "ParsedUnit",
    "PiGroup",
    "Quantity",
    "UnitRegistry",
    "check_basis",
    "check_similarity",
    "default_registry",
    "derive_exponents_cramer",
    "derive_exponents_nullspace",
    "derive_pi_groups",
    "dv_combine",
    "dv_is_dimensionless",
    "eval_pi",
    "format_pi_group",
    "parse_unit",
    "solve_unknown",
]
