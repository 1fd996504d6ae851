"""Combinatorial rigidity of planar frameworks with forced symmetry."""

__version__ = "0.1.0"
