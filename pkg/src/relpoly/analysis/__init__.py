"""Product specs, inflection counting, the complete-graph power bounds and the construction search."""

from .construction import (
    ConstructionState,
    SearchBudget,
    SPropertiesReport,
    construction_search,
    derivative_difference_sign,
    verify_s_properties,
)
from .reliability import (
    LogDerivative,
    count_inflections,
    endpoint_jet,
    exact_value,
    log_derivative,
    log_second_derivative_numerator,
    mp_value,
    product_reliability,
)
from .spec import ProductSpec, SpecParseError, parse_spec, render_spec
from .theorem import (
    CertifiedValue,
    ConditionCheck,
    ParamResult,
    TheoremConditions,
    choose_base,
    find_theorem_params,
    theorem_conditions,
    theorem_f_g,
)

__all__ = [
    "CertifiedValue",
    "ConditionCheck",
    "ConstructionState",
    "ParamResult",
    "SPropertiesReport",
    "SearchBudget",
    "TheoremConditions",
    "choose_base",
    "construction_search",
    "derivative_difference_sign",
    "find_theorem_params",
    "theorem_conditions",
    "theorem_f_g",
    "verify_s_properties",
    "LogDerivative",
    "ProductSpec",
    "SpecParseError",
    "count_inflections",
    "endpoint_jet",
    "exact_value",
    "log_derivative",
    "log_second_derivative_numerator",
    "mp_value",
    "parse_spec",
    "product_reliability",
    "render_spec",
]
