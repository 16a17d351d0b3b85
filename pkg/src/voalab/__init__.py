"""Exact computations in vertex algebras of free-field type and their orbifolds."""

__version__ = "0.1.0"
