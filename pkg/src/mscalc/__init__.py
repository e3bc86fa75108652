"""Multisegment calculator - combinatorics of irreducible representations of GL_n."""

__version__ = "0.1.0"
