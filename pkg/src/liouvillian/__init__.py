"""Liouvillian integrability of y'' = M(x) y with polynomial M, in exact arithmetic."""

__version__ = "0.1.0"
