"""Dynamic low-discrepancy edge orientation."""

from ._carpool import (
    AdaptiveRun,
    CarpoolError,
    Engine,
    EventKind,
    GirthThreshold,
    MetricsReport,
    UpdateEvent,
    UpdateResult,
    UpdateStream,
    brute_girth,
    euler_orient,
    exhaustive_min_disc,
    gen_adaptive_greedy,
    gen_cycle_churn,
    gen_high_girth,
    gen_random,
    girth_threshold,
    parse_stream,
    recourse_ceiling,
    serialize_stream,
    trace_line,
)

__all__ = [
    "AdaptiveRun",
    "CarpoolError",
    "Engine",
    "EventKind",
    "GirthThreshold",
    "MetricsReport",
    "UpdateEvent",
    "UpdateResult",
    "UpdateStream",
    "brute_girth",
    "euler_orient",
    "exhaustive_min_disc",
    "gen_adaptive_greedy",
    "gen_cycle_churn",
    "gen_high_girth",
    "gen_random",
    "girth_threshold",
    "parse_stream",
    "recourse_ceiling",
    "serialize_stream",
    "trace_line",
]
