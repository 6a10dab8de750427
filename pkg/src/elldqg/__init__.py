"""Numerical toolkit for the elliptic dynamical quantum group: theta functions,
dynamical R-matrices, elliptic hypergeometric series, the pairing between the
generator algebra and its dual, and the dynamical representation on V^N."""
from .difference_ops import DiffOp, T, compose, diffop_eq, mult
from .dynrep import VNVector, act_generator, act_matrix_element, basis_vector, is_spherical, rep_pairing_extract, weight
from .ehs import NonTerminatingError, VParams, balanced_check, termination_index, v_series
from .elliptic_core import ModulusParams, ell_binomial, ell_shifted_factorial, qpoch_inf, theta
from .rmatrix import PoleError, elliptic_R, qdybe_residual, rational_R

__all__ = [
    "DiffOp", "T", "compose", "diffop_eq", "mult",
    "VNVector", "act_generator", "act_matrix_element", "basis_vector", "is_spherical", "rep_pairing_extract", "weight",
    "NonTerminatingError", "VParams", "balanced_check", "termination_index", "v_series",
    "ModulusParams", "ell_binomial", "ell_shifted_factorial", "qpoch_inf", "theta",
    "PoleError", "elliptic_R", "qdybe_residual", "rational_R",
]
