"""Block-granularity cache replacement simulator for merge-sort traces."""

from .errors import (
    ConfigError,
    ContractViolationError,
    InvariantViolationError,
    TraceParseError,
    UndefinedImprovementError,
)
from .experiment import (
    SweepEntry,
    SweepFamily,
    SweepSpec,
    SweepTable,
    cell_value,
    improvement,
    render,
    run_sweep,
)
from .hierarchy import (
    HierarchyConfig,
    LevelConfig,
    MissRateReport,
    SimStats,
    simulate,
)
from .policies import (
    DEFAULT_PBR_FIXED,
    AccessOutcome,
    CachePolicy,
    FifoCache,
    LfuCache,
    LruCache,
    OptCache,
    PartitionedCache,
    PolicyKind,
    PolicySpec,
    make_policy,
    miss_count,
    parse_policy,
    prepare_opt,
    run_trace,
)
from .trace import (
    Phase,
    Trace,
    TraceEvent,
    generate_merge_sort_trace,
    read_trace,
    write_trace,
)

__version__ = "0.1.0"

__all__ = [
    "AccessOutcome",
    "CachePolicy",
    "ConfigError",
    "ContractViolationError",
    "DEFAULT_PBR_FIXED",
    "FifoCache",
    "HierarchyConfig",
    "InvariantViolationError",
    "LevelConfig",
    "LfuCache",
    "LruCache",
    "MissRateReport",
    "OptCache",
    "PartitionedCache",
    "Phase",
    "PolicyKind",
    "PolicySpec",
    "SimStats",
    "SweepEntry",
    "SweepFamily",
    "SweepSpec",
    "SweepTable",
    "Trace",
    "TraceEvent",
    "TraceParseError",
    "UndefinedImprovementError",
    "cell_value",
    "generate_merge_sort_trace",
    "improvement",
    "make_policy",
    "miss_count",
    "parse_policy",
    "prepare_opt",
    "read_trace",
    "render",
    "run_sweep",
    "run_trace",
    "simulate",
    "write_trace",
]
