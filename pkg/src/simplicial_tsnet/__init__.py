"""Simplicial characterisers of time-series visibility networks."""

from .cliques import CliqueComplex, brute_force_cliques, maximal_cliques
from .errors import (
    DomainError,
    InputError,
    InvariantViolation,
    NonFiniteValueError,
    ParameterError,
    SegmentationError,
)
from .q_analysis import (
    Analysis,
    NodeParticipation,
    StructureVectors,
    analyze,
    entropy_vector,
    node_dimensions,
    q_components,
    structure_vectors,
    topological_entropy,
)
from .report import AnalysisReport, run_pipeline
from .series import LogisticParams, SegmentationPlan, TimeSeries, load_series, logistic_series, segment_series
from .visibility import VisibilityGraph, build_visibility_graph, visible

__version__ = "0.1.0"

__all__ = [
    "Analysis",
    "AnalysisReport",
    "CliqueComplex",
    "DomainError",
    "InputError",
    "InvariantViolation",
    "LogisticParams",
    "NodeParticipation",
    "NonFiniteValueError",
    "ParameterError",
    "SegmentationError",
    "SegmentationPlan",
    "StructureVectors",
    "TimeSeries",
    "VisibilityGraph",
    "analyze",
    "brute_force_cliques",
    "build_visibility_graph",
    "entropy_vector",
    "load_series",
    "logistic_series",
    "maximal_cliques",
    "node_dimensions",
    "q_components",
    "run_pipeline",
    "segment_series",
    "structure_vectors",
    "topological_entropy",
    "visible",
]
