"""Dividing sets on the marked disk, bypass triangles, twisted complexes over GF(2)
and the quiver algebras presenting them."""

__version__ = "0.1.0"
