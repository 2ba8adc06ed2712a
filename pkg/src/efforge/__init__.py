"""Compact extended formulations for combinatorial polytopes, verified exactly."""

__version__ = "0.1.0"
