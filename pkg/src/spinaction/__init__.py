"""Exact degree computations for spin actions on 4-manifolds and the genus bounds they give."""

from .cyclotomic import CyclotomicNumber, LaurentPoly, RationalFn, root_of_unity
from .degree import (
    build_trace_system,
    check_nondegeneracy,
    conclude_bound,
    solve_degree,
    solve_index,
    verify_theorem_c,
)
from .repring import GroupElement, GroupSpec, IndexData, RepElement
from .ringexpr import parse_ring
from .topology import ManifoldSpec, SurfaceClass, genus_bound

__version__ = "0.1.0"

__all__ = [
    "CyclotomicNumber",
    "GroupElement",
    "GroupSpec",
    "IndexData",
    "LaurentPoly",
    "ManifoldSpec",
    "RationalFn",
    "RepElement",
    "SurfaceClass",
    "build_trace_system",
    "check_nondegeneracy",
    "conclude_bound",
    "genus_bound",
    "parse_ring",
    "root_of_unity",
    "solve_degree",
    "solve_index",
    "verify_theorem_c",
]
