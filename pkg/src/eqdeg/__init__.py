"""Equivariant gradient degree computations for Gamma x O(2) and Gamma x S^1."""

__version__ = "0.1.0"
