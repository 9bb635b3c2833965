"""Fault-tolerant committee selection under the min-max Chamberlin-Courant rule.

A committee of at most k candidates serves voters in a metric space; each
voter counts only its nearest committee member and the committee is judged by
its worst-served voter. Up to f candidates may fail and must be replaced
in-place (the survivors stay). The package solves three problems -- repairing
a committee after given failures, scoring a committee against worst-case
failures, and designing a committee that withstands them -- with exact
polynomial algorithms on a line, constant-factor approximations in any metric,
a bicriterion grid scheme in the plane, and brute-force oracles that verify
every guarantee at desk scale.
"""

from .model import (
    Committee,
    DimensionError,
    Election,
    EmptyCommitteeError,
    EnumerationGuardError,
    FailingSet,
    INFEASIBLE,
    NotEnoughCandidatesError,
    Score,
    SolveReport,
    candidate_distance_set,
    committee_score,
    is_feasible,
    kth_nearest_distance,
    point_distance,
    voter_score,
)
from .oracle import (
    fts_exact,
    max_disjoint_intervals_1d,
    min_hitting_set_1d,
    oftc_exact,
    orp_exact,
    replacement_score,
)
from .one_dim import (
    DeltaTable,
    IntervalInstance,
    build_delta_table,
    build_interval_instance,
    fts_1d,
    fts_1d_decision,
    oftc_1d,
    oftc_1d_greedy_hitting_set,
    orp_1d,
    orp_1d_decision,
)
from .metric_approx import (
    RadiusTooSmallError,
    WitnessRecord,
    fts_approx3,
    oftc_approx3_bounded_f,
    oftc_approx5,
    oftc_decision_approx3,
    orp_approx3,
)
from .eptas import (
    CellMap,
    GridBox,
    GridDecomposition,
    approx_score,
    choose_shift,
    grid_parameter,
    oftc_eptas,
    solve_box,
)
from .generators import GeneratorConfig, generate, random_committee, random_failing_set

__version__ = "0.1.0"

__all__ = [
    "Committee",
    "DimensionError",
    "Election",
    "EmptyCommitteeError",
    "EnumerationGuardError",
    "FailingSet",
    "INFEASIBLE",
    "NotEnoughCandidatesError",
    "Score",
    "SolveReport",
    "candidate_distance_set",
    "committee_score",
    "is_feasible",
    "kth_nearest_distance",
    "point_distance",
    "voter_score",
    "fts_exact",
    "max_disjoint_intervals_1d",
    "min_hitting_set_1d",
    "oftc_exact",
    "orp_exact",
    "replacement_score",
    "DeltaTable",
    "IntervalInstance",
    "build_delta_table",
    "build_interval_instance",
    "fts_1d",
    "fts_1d_decision",
    "oftc_1d",
    "oftc_1d_greedy_hitting_set",
    "orp_1d",
    "orp_1d_decision",
    "RadiusTooSmallError",
    "WitnessRecord",
    "fts_approx3",
    "oftc_approx3_bounded_f",
    "oftc_approx5",
    "oftc_decision_approx3",
    "orp_approx3",
    "CellMap",
    "GridBox",
    "GridDecomposition",
    "approx_score",
    "choose_shift",
    "grid_parameter",
    "oftc_eptas",
    "solve_box",
    "GeneratorConfig",
    "generate",
    "random_committee",
    "random_failing_set",
]
