"""Exact sample-width combinatorics for binary functions on [0, B]."""

from .bounds import BoundParams, interval_union_trace, remark_bound, sauer_phi, theorem_bound, vc_dimension
from .canon import GeneralizedCollection, procedure_g, procedure_q, verify_claim1, verify_claim2
from .enumeration import (
    GrowthSearchConfig,
    RealizabilityInstance,
    grid_oracle_patterns,
    growth_search,
    hyper_trace_exact,
    realizable_patterns,
)
from .hyper import Threshold, e_value, hyperconcept, theta, trace_count, v_vector
from .model import (
    Domain,
    GeneralizedInterval,
    Sample,
    SampleCollection,
    StepFunction,
    canonical_order,
    collection_support,
    evaluate_h,
    interior_roots,
    make_step_function,
    step_function_from_roots,
)
from .width import WidthFunction, abs_width, eval_width_function, point_width, sample_width, width_function

__version__ = "0.1.0"

__all__ = [
    "BoundParams",
    "interval_union_trace",
    "remark_bound",
    "sauer_phi",
    "theorem_bound",
    "vc_dimension",
    "GeneralizedCollection",
    "procedure_g",
    "procedure_q",
    "verify_claim1",
    "verify_claim2",
    "GrowthSearchConfig",
    "RealizabilityInstance",
    "grid_oracle_patterns",
    "growth_search",
    "hyper_trace_exact",
    "realizable_patterns",
    "Threshold",
    "e_value",
    "hyperconcept",
    "theta",
    "trace_count",
    "v_vector",
    "Domain",
    "GeneralizedInterval",
    "Sample",
    "SampleCollection",
    "StepFunction",
    "canonical_order",
    "collection_support",
    "evaluate_h",
    "interior_roots",
    "make_step_function",
    "step_function_from_roots",
    "WidthFunction",
    "abs_width",
    "eval_width_function",
    "point_width",
    "sample_width",
    "width_function",
]
