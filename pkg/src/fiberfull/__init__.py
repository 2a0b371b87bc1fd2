"""Constant local cohomology of Groebner degenerations, decided exactly."""

__version__ = "0.1.0"
