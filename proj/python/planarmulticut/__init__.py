"""Planar correlation clustering (multicut) with long-range repulsive pair constraints."""

from ._planarmulticut import (
    MulticutError,
    MulticutLabeling,
    ProblemInstance,
    SolveReport,
    TraceRow,
    __version__,
    brute_force_optimal,
    cyc_membership_check,
    generate,
    load_instance,
    min_two_colorable_cut,
    multicut_cost,
    parse_instance,
    round_upper_bound,
    save_instance,
    serialize_instance,
    solve,
)

__all__ = [
    "MulticutError",
    "MulticutLabeling",
    "ProblemInstance",
    "SolveReport",
    "TraceRow",
    "__version__",
    "brute_force_optimal",
    "cyc_membership_check",
    "generate",
    "load_instance",
    "min_two_colorable_cut",
    "multicut_cost",
    "parse_instance",
    "round_upper_bound",
    "save_instance",
    "serialize_instance",
    "solve",
]
