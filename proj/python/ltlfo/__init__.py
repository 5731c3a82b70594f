"""Runtime verification of first-order temporal policies over event traces."""

from ._core import (
    CapacityError,
    Event,
    FreeVariableError,
    LtlfoError,
    Monitor,
    ProgressionMonitor,
    SortError,
    Spec,
    SpecSyntaxError,
    TraceError,
    automaton_dot,
    compare,
    dump_trace,
    gen_trace,
    load_spec,
    monitor,
    parse_spec,
    parse_trace,
    word_problem,
)

__all__ = [
    "CapacityError",
    "Event",
    "FreeVariableError",
    "LtlfoError",
    "Monitor",
    "ProgressionMonitor",
    "SortError",
    "Spec",
    "SpecSyntaxError",
    "TraceError",
    "automaton_dot",
    "compare",
    "dump_trace",
    "gen_trace",
    "load_spec",
    "monitor",
    "parse_spec",
    "parse_trace",
    "word_problem",
]
