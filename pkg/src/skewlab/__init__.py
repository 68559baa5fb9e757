"""Exact verification workbench for skew polynomial extensions of finite modules."""

__version__ = "0.1.0"
