"""Scored homogeneous NFAs on a simulated STE+ overlay array.

Patterns compile to automata whose best accepted path is the pattern's
alignment score under a linear-gap additive model; the engine runs them
one byte per cycle with max-plus score propagation.
"""

from .compiler import FULL, CompileOptions, compile_pattern, max_fanout, state_count
from .engine import (
    BenchStats,
    Engine,
    Report,
    RunMode,
    best_global,
    best_streaming,
    new_engine,
    run,
    step,
    throughput_bench,
)
from .errors import (
    CapacityExceeded,
    EmptyInput,
    EmptyPattern,
    FanoutExceeded,
    ModelInvariantViolation,
    NoAlignment,
    WireBudgetExceeded,
)
from .oracle import enumerate_paths, glocal, nw_global
from .overlay import OverlayConfig, Placement, PlacementStats, place, utilization_report
from .scoring import ScoredNfa, ScoreModel, ScoreWidth, StePlus, SymbolClass, class_matches, saturating_add

__version__ = "0.1.0"
