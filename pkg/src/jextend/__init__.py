"""Constructive J-skew-self-adjoint and J-unitary extensions of partial operators."""

from .conjugation import (
    Conjugation,
    ToleranceConfig,
    apply_conjugation,
    bilinear_form,
    conjugated_operator,
    fixed_basis,
    random_conjugation,
)
from .engine import (
    ExtensionReport,
    Problem,
    double_problem,
    extend,
    validate,
    verify_j_unitary,
    verify_skew_self_adjoint,
)
from .graph import DoubledMap, PartialOperator, build_doubled_map, defect_space, graph_frame, operator_from_graph
from .splitter import split
from .subspaces import Frame, complement, direct_sum, is_orthogonal, map_frame, orthonormalize, spans_equal

__all__ = [
    "Conjugation",
    "DoubledMap",
    "ExtensionReport",
    "Frame",
    "PartialOperator",
    "Problem",
    "ToleranceConfig",
    "apply_conjugation",
    "bilinear_form",
    "build_doubled_map",
    "complement",
    "conjugated_operator",
    "defect_space",
    "direct_sum",
    "double_problem",
    "extend",
    "fixed_basis",
    "graph_frame",
    "is_orthogonal",
    "map_frame",
    "operator_from_graph",
    "orthonormalize",
    "random_conjugation",
    "spans_equal",
    "split",
    "validate",
    "verify_j_unitary",
    "verify_skew_self_adjoint",
]
