"""Exact univariate polynomial algebra over the rationals."""

from .poly import (
    DEFAULT_DEGREE_CEILING,
    ONE,
    Q,
    ZERO,
    DegreeCeilingError,
    Polynomial,
    compose_affine,
    differentiate,
    divmod_poly,
    evaluate_exact,
    exact_quotient,
    format_poly,
    poly_arith,
    poly_from_json,
    poly_pow,
    poly_to_json,
)
from .roots import (
    EndpointRootError,
    InflectionReport,
    SturmChain,
    count_sign_changes,
    sign_at,
    squarefree_part,
    sturm_distinct_roots,
)
from .spanning import SpanningForm, from_spanning_form, spanning_derivative, to_spanning_form

__all__ = [
    "DEFAULT_DEGREE_CEILING",
    "ONE",
    "Q",
    "ZERO",
    "DegreeCeilingError",
    "EndpointRootError",
    "InflectionReport",
    "Polynomial",
    "SpanningForm",
    "SturmChain",
    "compose_affine",
    "count_sign_changes",
    "differentiate",
    "divmod_poly",
    "evaluate_exact",
    "exact_quotient",
    "format_poly",
    "from_spanning_form",
    "poly_arith",
    "poly_from_json",
    "poly_pow",
    "poly_to_json",
    "sign_at",
    "spanning_derivative",
    "squarefree_part",
    "sturm_distinct_roots",
    "to_spanning_form",
]
