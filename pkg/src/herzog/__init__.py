"""Exact Groebner-degeneration toolkit for projective curves with squarefree initial ideals."""

__version__ = "0.1.0"
