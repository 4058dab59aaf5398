"""
Exact computations with quiver algebras: path algebras with relations,
localization, matrix and symbolic representations, stability, ADHM and
Nakajima monads, and verification of quiver algebroid stacks.
"""

from .algebra import (NOT_FOUND, PROVED, Element, QuiverAlgebra, free_algebra,
                      ideal_membership, multiply, normal_form)
from .localization import localize_matrix, localize_scalar
from .models import adhm, affine_an, affine_d4, extended_dga, preprojective
from .monad import (FreeComplex, build_adhm_monad, build_framed_functor_complex,
                    build_nakajima_monad, evaluate_adhm_at_point, slice_exactness,
                    verify_d_squared)
from .quiver import (Graph, Quiver, affine_delta, classify_form, double_quiver,
                     floer_euler_form, frame_quiver, positive_roots)
from .report import Report
from .representation import (ChartTriple, MatrixRep, check_dg, check_matrix_rep,
                             check_symbolic_rep, compose_symbolic, coordinate_standardize,
                             moment_map, stable_family_check, substitute, valuation,
                             verify_chart)
from .scalars import GaussianRational, Novikov
from .stability import (gauge_normalize_an, is_stable, max_invariant_in_kernel,
                        mc_region_classify, min_invariant_containing, verify_witness)
from .stack import (builtin_an_stack, builtin_d4_stack, builtin_framed_a1_stack,
                    commutativity_check, materialize, unframe, verify_stack)
from .symbolic import SymbolicRep

__version__ = "0.1.0"

__all__ = [
    "NOT_FOUND", "PROVED", "Element", "QuiverAlgebra", "free_algebra", "ideal_membership",
    "multiply", "normal_form", "localize_matrix", "localize_scalar", "adhm", "affine_an",
    "affine_d4", "extended_dga", "preprojective", "FreeComplex", "build_adhm_monad",
    "build_framed_functor_complex", "build_nakajima_monad", "evaluate_adhm_at_point",
    "slice_exactness", "verify_d_squared", "Graph", "Quiver", "affine_delta", "classify_form",
    "double_quiver", "floer_euler_form", "frame_quiver", "positive_roots", "Report",
    "ChartTriple", "MatrixRep", "check_dg", "check_matrix_rep", "check_symbolic_rep",
    "compose_symbolic", "coordinate_standardize", "moment_map", "stable_family_check",
    "substitute", "valuation", "verify_chart", "GaussianRational", "Novikov",
    "gauge_normalize_an", "is_stable", "max_invariant_in_kernel", "mc_region_classify",
    "min_invariant_containing", "verify_witness", "builtin_an_stack", "builtin_d4_stack",
    "builtin_framed_a1_stack", "commutativity_check", "materialize", "unframe", "verify_stack",
    "SymbolicRep",
    "__version__",
]
