"""Exact-arithmetic toolkit for the random assignment problem.

Mechanisms (serial dictatorship, exact and Monte Carlo RSD, probabilistic
serial), efficiency certification (stochastic dominance, trading cycles,
Pareto optimality, ex post decomposition), and exhaustive verification of
the equivalence between RSD's SD-inefficiency and the existence of an
SD-inefficient ex post efficient assignment.
"""

from .core import (
    EXACT_MECHANISM_CAP,
    PROFILE_ENUMERATION_CAP,
    AgentId,
    CapExceededError,
    DiscreteAssignment,
    ObjectId,
    Permutation,
    PreferenceProfile,
    ProfileParseError,
    RandomAssignment,
    Rational,
    TradingCycle,
    all_profiles,
    default_object_names,
    format_profile,
    parse_profile,
    profile_at,
    profile_space_size,
    upper_contour_sum,
)
from .efficiency import (
    ExPostCertificate,
    SdComparison,
    decompose_ex_post,
    enumerate_pareto_optimal,
    find_trading_cycle,
    is_ex_post_efficient,
    is_pareto_optimal,
    is_sd_efficient,
    sd_compare,
    sd_improvement_oracle,
    uniform_po_mixture,
)
from .mechanisms import (
    RsdResult,
    probabilistic_serial,
    rsd_exact,
    rsd_monte_carlo,
    serial_dictatorship,
)
from .verify import (
    Counterexample,
    SweepDisagreement,
    SweepReport,
    TheoremRecord,
    check_theorem,
    mine_counterexamples,
    sweep,
)

__version__ = "0.1.0"

__all__ = [
    "AgentId",
    "ObjectId",
    "Rational",
    "Permutation",
    "PreferenceProfile",
    "DiscreteAssignment",
    "RandomAssignment",
    "TradingCycle",
    "ProfileParseError",
    "CapExceededError",
    "PROFILE_ENUMERATION_CAP",
    "EXACT_MECHANISM_CAP",
    "parse_profile",
    "format_profile",
    "all_profiles",
    "profile_at",
    "profile_space_size",
    "default_object_names",
    "upper_contour_sum",
    "RsdResult",
    "serial_dictatorship",
    "rsd_exact",
    "rsd_monte_carlo",
    "probabilistic_serial",
    "SdComparison",
    "sd_compare",
    "find_trading_cycle",
    "is_sd_efficient",
    "sd_improvement_oracle",
    "is_pareto_optimal",
    "enumerate_pareto_optimal",
    "uniform_po_mixture",
    "ExPostCertificate",
    "decompose_ex_post",
    "is_ex_post_efficient",
    "TheoremRecord",
    "SweepReport",
    "SweepDisagreement",
    "Counterexample",
    "check_theorem",
    "sweep",
    "mine_counterexamples",
    "__version__",
]
