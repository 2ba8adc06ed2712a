"""Feasibility, implicit equalities, affine hulls and redundancy, all via
exact LPs."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..errors import InfeasibleError
from ..linalg import nullspace
from .model import LinearProgram, Row
from .simplex import solve

ONE = Fraction(1)


def is_feasible(lp: LinearProgram) -> tuple[bool, list[Fraction] | None]:
    """Whether the constraint system has a solution, with a witness point."""
    res = solve(lp.with_objective({}))
    return (True, res.point) if res.optimal else (False, None)


def implicit_equalities(lp: LinearProgram) -> list[int]:
    """Indices of inequalities that hold with equality on the whole
    (nonempty) solution set; lower bounds are not examined.

    Each round maximizes the total slack, capped at 1 per row, over the
    still-undecided rows; rows receiving positive slack are certainly not
    implicit equalities.  A round with optimum 0 settles the rest.
    """
    undecided = list(range(len(lp.inequalities)))
    n = lp.num_vars
    while undecided:
        k = len(undecided)
        ineqs = []
        pos = {i: t for t, i in enumerate(undecided)}
        for i, (row, b) in enumerate(lp.inequalities):
            if i in pos:
                row = dict(row)
                row[n + pos[i]] = ONE
            ineqs.append((row, b))
        ineqs += [({n + t: ONE}, ONE) for t in range(k)]
        lower = dict(lp.lower)
        lower.update({n + t: Fraction(0) for t in range(k)})
        aux = LinearProgram(
            n + k, {n + t: ONE for t in range(k)}, "max",
            list(lp.equations), ineqs, lower,
        )
        res = solve(aux)
        if not res.optimal:
            raise InfeasibleError("system is infeasible")
        if res.value == 0:
            return undecided
        undecided = [i for t, i in enumerate(undecided) if res.point[n + t] == 0]
    return []


@dataclass
class AffineHull:
    point: list[Fraction]
    directions: list[list[Fraction]]

    @property
    def dimension(self) -> int:
        return len(self.directions)


def affine_hull(lp: LinearProgram) -> AffineHull:
    """A point of the solution set and a basis of its direction space."""
    full = lp.bounds_as_rows()
    ok, point = is_feasible(full)
    if not ok:
        raise InfeasibleError("affine hull of an empty system")
    tight = implicit_equalities(full)
    rows = [r for r, _ in full.equations] + [full.inequalities[i][0] for i in tight]
    dense = [[r.get(j, Fraction(0)) for j in range(lp.num_vars)] for r in rows]
    return AffineHull(point, nullspace(dense, lp.num_vars))


def remove_redundant(lp: LinearProgram) -> LinearProgram:
    """Irredundant description of the same solution set.

    Lower bounds are treated as inequalities.  Implicit equalities move to
    the equation list; every remaining inequality is then tested, in order,
    against the system without it and dropped when implied.
    """
    full = lp.bounds_as_rows()
    if not is_feasible(full)[0]:
        raise InfeasibleError("cannot reduce an infeasible system")
    tight = set(implicit_equalities(full))
    equations = list(full.equations) + [full.inequalities[i] for i in sorted(tight)]
    kept: list[tuple[Row, Fraction]] = [c for i, c in enumerate(full.inequalities) if i not in tight]
    i = 0
    while i < len(kept):
        row, b = kept[i]
        others = kept[:i] + kept[i + 1:]
        probe = LinearProgram(lp.num_vars, row, "max", equations, others)
        res = solve(probe)
        if res.optimal and res.value <= b:
            kept = others
        else:
            i += 1
    return LinearProgram(lp.num_vars, dict(lp.objective), lp.sense, equations, kept)
