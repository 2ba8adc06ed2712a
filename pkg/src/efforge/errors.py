"""Exception types shared across the package."""

from __future__ import annotations


class DomainError(ValueError):
    """An argument lies outside the range an operation is defined for."""


class SizeGuardError(ValueError):
    """An instance exceeds the desk-scale limits of a brute-force routine."""


class InfeasibleError(ValueError):
    """A linear system that was required to be feasible has no solution."""


class UnboundedError(ValueError):
    """A polyhedron that was required to be bounded contains a ray."""
