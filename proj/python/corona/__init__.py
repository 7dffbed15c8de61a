"""Corona limits of multigrid tilings (Python bindings)."""

from ._core import (
    CoronaError,
    MultigridSpec,
    certify,
    char_polygon,
    convergence,
    corona_sizes,
    toppled_counts,
)

__all__ = [
    "CoronaError",
    "MultigridSpec",
    "certify",
    "char_polygon",
    "convergence",
    "corona_sizes",
    "toppled_counts",
]
