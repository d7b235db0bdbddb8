"""Curvature analysis for semi-symmetric metric connections whose torsion
is generated by a (possibly concircular) vector field."""

from .connection import build_connection, check_concircular
from .curvature import curvature_family
from .geometry import MetricSpec, VectorFieldSpec, frame_at

__version__ = "0.1.0"

__all__ = [
    "MetricSpec", "VectorFieldSpec", "frame_at",
    "build_connection", "check_concircular", "curvature_family",
    "__version__",
]
