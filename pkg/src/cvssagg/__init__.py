"""Context-corrected aggregation of CVSS scores over dependency graphs."""

from .aggregate import AggregationInput, AggregationResult, aggregate, bayesian_sum
from .cvss import CvssVector, base_score, parse_vector, render_vector
from .factors import AverageKind, CorrectionFactors, DeploymentContext, average_factor
from .graph import Edg, ExploitMaturity, Vulnerability, build_graph, depth_map
from .pipeline import analyze
from .report import Report, load_context, load_graph, render_report

__version__ = "0.1.0"

__all__ = [
    "AggregationInput",
    "AggregationResult",
    "AverageKind",
    "CorrectionFactors",
    "CvssVector",
    "DeploymentContext",
    "Edg",
    "ExploitMaturity",
    "Report",
    "Vulnerability",
    "aggregate",
    "analyze",
    "average_factor",
    "base_score",
    "bayesian_sum",
    "build_graph",
    "depth_map",
    "load_context",
    "load_graph",
    "parse_vector",
    "render_report",
    "render_vector",
]
