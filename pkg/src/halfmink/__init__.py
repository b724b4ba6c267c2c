"""Numerical Klein-Gordon kernels on half-Minkowski spacetime with Robin
boundary conditions: propagators, two-point functions and their local
Hadamard structure, with built-in cross-validation oracles."""

__version__ = "0.1.0"

from .config import (  # noqa: F401
    DIRICHLET,
    DegenerateError,
    HalfMinkError,
    InfraredError,
    ModeReflection,
    ModelConfig,
    NonConvergenceError,
    OnConeError,
    QuadratureSpec,
    RunConfig,
    SmoothingDirection,
)
