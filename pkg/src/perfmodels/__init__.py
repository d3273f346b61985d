"""Simple analytic performance models and a queue simulator.

Amdahl's Law, Little's Law and the M/M/1 queue live in :mod:`.core`;
series/parallel bottleneck analysis in :mod:`.topology` with its text
format in :mod:`.dsl`; the discrete-event queue simulator in :mod:`.sim`.
"""

from .core import (
    UNBOUNDED,
    MM1Metrics,
    amdahl_speedup,
    buffer_sizing,
    littles_solve,
    mm1_latency_curve,
    mm1_metrics,
    mm1_normalized_latency,
    mm1_solve_service,
    mm1_utilization,
)
from .errors import (
    DomainError,
    ParseError,
    PerfModelError,
    SemanticError,
    StabilityError,
    UndefinedResultError,
)
from .sim import ServiceDistribution, SimConfig, SimResult, littles_check, simulate
from .topology import (
    BottleneckReport,
    Leaf,
    Parallel,
    Series,
    bottleneck_leaves,
    max_throughput,
    parallel,
    series,
    slack_report,
)

__version__ = "0.1.0"
