"""Exact state lattices, joint distributions, coordinate transforms, and
lattice-binomial algebra for max-of-parents models on DAGs."""

__version__ = "0.1.0"
