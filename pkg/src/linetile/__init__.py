"""Matching complexes of line tilings: generators, exact homology, and a certified reduction engine."""

from .graph import Multigraph, GraphError
from .spheres import HomotopyClass, wedge, suspension, join

__version__ = "0.1.0"

__all__ = ["GraphError", "HomotopyClass", "Multigraph", "join", "suspension", "wedge"]
