"""Majority Boolean automata networks and the density classification task."""

from .core import (
    Configuration,
    Digraph,
    MajorityNetwork,
    NetworkMetrics,
    TrajectoryOutcome,
    evolve,
    local_majority,
    network_metrics,
    step,
)
from .errors import (
    BudgetExceeded,
    DimensionError,
    DomainError,
    FormatError,
    MbanError,
    ParameterError,
)

__version__ = "0.1.0"

__all__ = [
    "Configuration",
    "Digraph",
    "MajorityNetwork",
    "NetworkMetrics",
    "TrajectoryOutcome",
    "evolve",
    "local_majority",
    "network_metrics",
    "step",
    "BudgetExceeded",
    "DimensionError",
    "DomainError",
    "FormatError",
    "MbanError",
    "ParameterError",
]
