"""The subgroup at infinity: parameterization, multiplication polynomials,
group structure, and the discrete logarithm."""

from .dlp import DlpResult, DlpTranscript, dlp_solve
from .fpoly import FPolynomial, compute_f, curve_f_series, f_value_at
from .points import (
    InfinityPoint,
    inf_add,
    inf_scalar,
    point_order,
    trajectory,
    x_of_multiple,
)
from .psi import (
    MultPolyTable,
    build_psi_table,
    psi_eval,
    psi_table,
    psi_values_at,
    validate_table,
)
from .scan import psi_p_of_p_short, scan_exceptional_rate
from .structure import (
    ExceptionalReport,
    GroupStructure,
    brute_force_structure,
    check_conditions,
    classify_case,
    full_group_report,
    group_structure,
)

__all__ = [
    "DlpResult",
    "DlpTranscript",
    "dlp_solve",
    "FPolynomial",
    "compute_f",
    "curve_f_series",
    "f_value_at",
    "InfinityPoint",
    "inf_add",
    "inf_scalar",
    "point_order",
    "trajectory",
    "x_of_multiple",
    "MultPolyTable",
    "build_psi_table",
    "psi_eval",
    "psi_table",
    "psi_values_at",
    "validate_table",
    "psi_p_of_p_short",
    "scan_exceptional_rate",
    "ExceptionalReport",
    "GroupStructure",
    "brute_force_structure",
    "check_conditions",
    "classify_case",
    "full_group_report",
    "group_structure",
]
