"""Citation-dynamics random graph models, network statistics and parameter fitting."""

__version__ = "0.1.0"

from .estimation import estimate_p, expected_burned, expected_degree, read_fraction
from .generators import GenerationError, Model, ModelParams, generate
from .graph import Graph
from .metrics import MetricsReport, compute_metrics
from .rng import Rng

__all__ = [
    "GenerationError", "Graph", "MetricsReport", "Model", "ModelParams", "Rng",
    "compute_metrics", "estimate_p", "expected_burned", "expected_degree", "generate", "read_fraction",
]
