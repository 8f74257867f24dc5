"""Small solutions of inequalities over F_q((1/t)) by reduction to systems over F_q."""
from .errors import (ArityMismatch, BudgetExceeded, ConstantPolynomial, DivisionByZero, FieldMismatch, FqIneqError,
                     HypothesisViolated, NonChevalleyForm, NotPrime, ParseError, RingMismatch, SizeExceeded,
                     ZeroCoefficient, ZeroPolynomial, ZeroVector)
from .galois_field import FieldElement, FieldSpec, enumerate_elements, field_arith, field_of_order, make_field
from .laurent import LaurentPoly, frac_ord, laurent_arith, ord_of, vector_ord
from .lowerbound import (LowerBoundInstance, MinSearchResult, SearchStatus, construct_instance, exhaustive_min_search,
                         sample_kernel_solution)
from .multipoly import FQ, LAURENT, MultiPoly, degree_info, expand_substitution, flat_index, mp_eval
from .normic import ExtensionRing, NormFormBundle, build_norm_form, check_anisotropic
from .planner import (Certificate, Equation, ProblemInstance, ReductionPlan, Variant, build_system, certify,
                      lift_solution, plan_diagonal, plan_distmod, plan_general, plan_refined, run_pipeline)
from .poly import (MINUS_INFINITY, Poly, count_monic_irreducibles, enumerate_monic_irreducibles, is_irreducible,
                   poly_arith)
from .solver import DEFAULT_BUDGET, Mode, Outcome, SolveReport, count_zeros, solve_nontrivial

__version__ = "0.1.0"

__all__ = [
    "ArityMismatch",
    "BudgetExceeded",
    "ConstantPolynomial",
    "DivisionByZero",
    "FieldMismatch",
    "FqIneqError",
    "HypothesisViolated",
    "NonChevalleyForm",
    "NotPrime",
    "ParseError",
    "RingMismatch",
    "SizeExceeded",
    "ZeroCoefficient",
    "ZeroPolynomial",
    "ZeroVector",
    "FieldElement",
    "FieldSpec",
    "enumerate_elements",
    "field_arith",
    "field_of_order",
    "make_field",
    "LaurentPoly",
    "frac_ord",
    "laurent_arith",
    "ord_of",
    "vector_ord",
    "LowerBoundInstance",
    "MinSearchResult",
    "SearchStatus",
    "construct_instance",
    "exhaustive_min_search",
    "sample_kernel_solution",
    "FQ",
    "LAURENT",
    "MultiPoly",
    "degree_info",
    "expand_substitution",
    "flat_index",
    "mp_eval",
    "ExtensionRing",
    "NormFormBundle",
    "build_norm_form",
    "check_anisotropic",
    "Certificate",
    "Equation",
    "ProblemInstance",
    "ReductionPlan",
    "Variant",
    "build_system",
    "certify",
    "lift_solution",
    "plan_diagonal",
    "plan_distmod",
    "plan_general",
    "plan_refined",
    "run_pipeline",
    "MINUS_INFINITY",
    "Poly",
    "count_monic_irreducibles",
    "enumerate_monic_irreducibles",
    "is_irreducible",
    "poly_arith",
    "DEFAULT_BUDGET",
    "Mode",
    "Outcome",
    "SolveReport",
    "count_zeros",
    "solve_nontrivial",
]
