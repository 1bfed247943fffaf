"""Bipartite graph C*-algebras: isomorphism decision, low-dimensional
representations and generic-position projection families."""

__version__ = "0.1.0"
