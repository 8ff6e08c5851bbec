"""Proportional fairness for obnoxious facility location on [0, 1], in exact arithmetic."""

from .core import (
    Lottery,
    Objective,
    Profile,
    egalitarian_welfare,
    expected_utility,
    group,
    utilitarian_welfare,
    utility,
)
from .fairness import (
    IFS2,
    PF2,
    UFS2,
    Axiom,
    HybridAxiom,
    HybridProfile,
    check,
    check_expectation,
    check_hybrid,
    feasible_region,
    hybrid_feasible_region,
)
from .intervals import IntervalSet
from .mechanisms_det import (
    InfeasibleError,
    opt_ew,
    opt_ew_fair,
    opt_uw,
    opt_uw_fair,
    solve_2pf,
    solve_hybrid,
)
from .mechanisms_rand import (
    collapse_support,
    mechanism2,
    randomized_2ifs,
    randomized_2ufs,
    randomized_ew,
)

__version__ = "0.1.0"
