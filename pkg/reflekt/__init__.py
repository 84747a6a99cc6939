"""Exact-arithmetic workbench for the complex reflection groups G(r,p,n)."""

__version__ = "1.0.0"
