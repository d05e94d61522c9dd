"""Manipulation of sports competitions by coalitions that throw games.

Fixed cups, round robins, ranked-reseeding cups and double-elimination
brackets, with exhaustive oracles for cross-checking small instances.
"""

from .brackets import (
    DoubleElimBracket,
    SeededField,
    double_elim_constructive,
    ranked_reseed_constructive,
    simulate_double_elim,
    simulate_reseed,
    simulate_round,
)
from .core import (
    WIN_LOSS,
    Answer,
    ManipulationPlan,
    Move,
    ScoringModel,
    Tournament,
    apply_plan,
    copeland_scores,
    manipulable_edges,
    normalize_scoring,
    validate_model_form,
)
from .cup import (
    CupTree,
    WinnerTable,
    cup_constructive,
    cup_destructive,
    cup_destructive_min,
    cup_min_manipulations,
    possible_winners,
    simulate_cup,
)
from .errors import *  # noqa: F401,F403
from .flow import Arc, FlowNetwork, FlowResult, feasible_flow, min_cost_feasible_flow
from .instance import InstanceFile, ParseError, ValidationError, parse_instance, serialize_instance
from .kernels import BACKEND
from .roundrobin import (
    GreedyResult,
    RRAnswer,
    build_flow_network,
    greedy_out_degree,
    rr_constructive,
    rr_destructive,
    rr_min_manipulations,
)

__version__ = "0.1.0"
