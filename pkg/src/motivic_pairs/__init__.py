"""Motivic classes of moduli of pairs and triples of type (n, 1) on a curve."""
from .poly import ClassPoly, NonExactDivision

__version__ = "0.1.0"
__all__ = ["ClassPoly", "NonExactDivision"]
