"""Desk-scale verification toolkit for k-matching-planar topological graphs."""

from bpk.graph import Graph
from bpk.drawing import TopologicalDrawing
from bpk.errors import BpkError

__all__ = ["Graph", "TopologicalDrawing", "BpkError"]
__version__ = "0.1.0"
