"""knapgap: exact additive integrality gaps for integer knapsack problems.

Everything correctness-bearing is exact: instances are validated integer
tuples, costs are fractions, residue tables and gaps are computed with
integer and rational arithmetic only, and the few irrational constants are
handled through certified one-sided rational approximations.
"""

from .bounds import (
    BoundReport,
    RhoEstimate,
    check_bounds,
    cook_gap_bound,
    gap_bound_frobenius,
    gap_bound_l1,
    gap_bound_linf,
    gap_lower_bound_covering,
    rho_lower,
    schur_bound,
)
from .core import (
    BasisReduction,
    KnapsackInstance,
    as_fraction,
    basis_reduction,
    cost_vector,
    lp_value,
    validate_instance,
)
from .errors import (
    BadEpsilon,
    BetaOutOfRange,
    BoundTooLarge,
    DimensionTooSmall,
    GuardrailExceeded,
    InsufficientSamples,
    KnapgapError,
    NegativeRhs,
    NegativeWeight,
    NonPositiveEntry,
    NoPointInBox,
    NotCoprime,
    ValidationError,
)
from .experiments import (
    ExperimentConfig,
    ExperimentSummary,
    SampleRecord,
    bracket_ratios,
    mean_experiment,
    sample_records,
    summarize,
    summary_to_json,
    tail_experiment,
    tail_exponent,
    write_records_csv,
)
from .gap import GapReport, gap_bruteforce, gap_exact, integrality_gap, ip_value
from .group import (
    GroupTable,
    covering_radius_integral,
    covering_radius_simplex,
    frobenius,
    frobenius_sieve_oracle,
    group_min_bruteforce,
    group_minima,
    lattice_gap,
    tightness_threshold,
)
from .instances import (
    LovaszExample,
    SamplerConfig,
    count_instances,
    delta_max,
    draw_instance,
    frobenius_cost,
    lovasz_example,
    sample_instances,
    tightness_family,
)

__version__ = "0.1.0"

__all__ = [
    "BadEpsilon",
    "BasisReduction",
    "BetaOutOfRange",
    "BoundReport",
    "BoundTooLarge",
    "DimensionTooSmall",
    "ExperimentConfig",
    "ExperimentSummary",
    "GapReport",
    "GroupTable",
    "GuardrailExceeded",
    "InsufficientSamples",
    "KnapgapError",
    "KnapsackInstance",
    "LovaszExample",
    "NegativeRhs",
    "NegativeWeight",
    "NoPointInBox",
    "NonPositiveEntry",
    "NotCoprime",
    "RhoEstimate",
    "SampleRecord",
    "SamplerConfig",
    "ValidationError",
    "as_fraction",
    "basis_reduction",
    "bracket_ratios",
    "check_bounds",
    "cook_gap_bound",
    "cost_vector",
    "count_instances",
    "delta_max",
    "covering_radius_integral",
    "covering_radius_simplex",
    "draw_instance",
    "frobenius",
    "frobenius_cost",
    "frobenius_sieve_oracle",
    "gap_bound_frobenius",
    "gap_bound_l1",
    "gap_bound_linf",
    "gap_bruteforce",
    "gap_exact",
    "gap_lower_bound_covering",
    "group_min_bruteforce",
    "group_minima",
    "integrality_gap",
    "ip_value",
    "lattice_gap",
    "lovasz_example",
    "lp_value",
    "mean_experiment",
    "rho_lower",
    "sample_instances",
    "sample_records",
    "schur_bound",
    "summarize",
    "summary_to_json",
    "tail_experiment",
    "tail_exponent",
    "tightness_family",
    "tightness_threshold",
    "validate_instance",
    "write_records_csv",
]
