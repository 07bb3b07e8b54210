"""Circular chromatic numbers of graphs via (k,d)-colorings, cycle ratios and token-game dynamics."""

from __future__ import annotations

from .bounds import (
    BoundReport,
    BoundsConfig,
    Hypothesis,
    alpha_t,
    best_lower_bound,
    bound_alpha1_1,
    bound_alpha2,
    bound_alphat,
    bound_d1,
    bound_d2,
    bound_new,
    chromatic_number,
    independence_number,
)
from .catalog import (
    complete,
    compose_new,
    cycle,
    g_family,
    odd_wheel,
    path,
    petersen,
    petersen_line,
    q_graph,
    w_gadget,
)
from .circular import (
    PeriodicSchedule,
    WeakColoringReport,
    chi_c_exact_kd,
    chi_c_exact_minty,
    chi_c_via_dynamics,
    chi_c_via_token_game,
    coloring_from_schedule,
    find_kd_coloring,
    kd_candidates,
    marking_from_coloring,
    schedule_from_coloring,
    verify_circular_coloring,
    verify_kd_coloring,
    verify_weak_circular_coloring,
    weak_coloring_from_marking,
)
from .dynamics import (
    SinkSequence,
    SteadyState,
    TokenGameState,
    run_to_steady_state,
    sink_reversal_step,
    sink_sequence,
    step_token_game,
)
from .errors import (
    CapExceeded,
    CircDynError,
    DomainError,
    GoodnessViolation,
    NotAcyclic,
    ParseError,
)
from .graph import (
    AcyclicOrientation,
    CircularColoring,
    KdColoring,
    Marking,
    Rational,
    UndirectedGraph,
    WeightedSymmetricDigraph,
    acyclic_orientations,
    line_graph,
    marking_from_orientation,
    to_symmetric_digraph,
)
from .ratio import CycleRatioResult, brute_force_max_cycle_ratio, compare_ratio, max_cycle_ratio

__version__ = "0.1.0"
