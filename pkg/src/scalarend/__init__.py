"""Indecomposable modules with scalar endomorphism rings, over quivers and finite groups."""

__version__ = "0.1.0"
