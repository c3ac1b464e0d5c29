"""Cell-size moments of Poisson-Voronoi cells near boundaries, secure degree
distributions, and a Monte Carlo Voronoi oracle."""

from ._vbl import *  # noqa: F401,F403
from ._vbl import (
    ConvergenceError,
    DegenerateError,
    DomainError,
    QuadratureError,
    RegionError,
)

__version__ = "0.1.0"
