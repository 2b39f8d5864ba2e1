"""Numerics for the two-parameter Herglotz-type function F(x; u, v) and relatives."""
from ._accel import backend
from .errors import (
    BranchCrossingError,
    ConvergenceError,
    CutError,
    DomainError,
    HznError,
    IntegrandError,
)

__version__ = "0.1.0"

__all__ = [
    "backend", "BranchCrossingError", "ConvergenceError", "CutError", "DomainError",
    "HznError", "IntegrandError", "__version__",
]
