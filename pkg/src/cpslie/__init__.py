"""Exact computations with complex product structures on real Lie algebras."""

from .lie import LieAlgebra, check_jacobi, realify_complexification
from .linalg import Subspace, circle_point, parse_rational, qarray
from .report import Report, StructureError
from .structures import ComplexProductStructure, validate_cps
from .lsa import (
    aff_construction,
    bicrossproduct,
    check_lsa,
    check_matched_pair,
    extended_product,
    induced_lsa,
    matched_pair_from_cps,
    phi_psi_obstruction,
)
from .connections import cp_connection, curvature, extend_to_hat, torsion, uniqueness_probe
from .hypercomplex import HypercomplexStructure, check_hypercomplex, induce_hypercomplex, iterate_family
from .forms import KForm, ce_differential, hypersymplectic_suite

__all__ = [
    "LieAlgebra", "check_jacobi", "realify_complexification",
    "Subspace", "circle_point", "parse_rational", "qarray",
    "Report", "StructureError",
    "ComplexProductStructure", "validate_cps",
    "aff_construction", "bicrossproduct", "check_lsa", "check_matched_pair",
    "extended_product", "induced_lsa", "matched_pair_from_cps", "phi_psi_obstruction",
    "cp_connection", "curvature", "extend_to_hat", "torsion", "uniqueness_probe",
    "HypercomplexStructure", "check_hypercomplex", "induce_hypercomplex", "iterate_family",
    "KForm", "ce_differential", "hypersymplectic_suite",
]
