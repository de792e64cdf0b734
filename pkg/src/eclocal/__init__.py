"""Elliptic curves over truncated power-series rings F_q[eps]/(eps^k).

Exact arithmetic, the group of points at infinity, multiplication
polynomials, abelian group structure, and a polynomial-time discrete
logarithm on the subgroup at infinity.
"""

from .fields import FqContext, FqElement, field_make
from .localring import INFINITY, RkContext, RkElement
from .sympoly import MultiPoly, parse_poly, poly_interpolate_n
from .curve import (
    ProjectivePoint,
    WeierstrassCurve,
    add_complete,
    add_inf,
    count_points_fq,
    project_point,
    scalar_mul,
)

__all__ = [
    "FqContext",
    "FqElement",
    "field_make",
    "INFINITY",
    "RkContext",
    "RkElement",
    "MultiPoly",
    "parse_poly",
    "poly_interpolate_n",
    "ProjectivePoint",
    "WeierstrassCurve",
    "add_complete",
    "add_inf",
    "count_points_fq",
    "project_point",
    "scalar_mul",
]
