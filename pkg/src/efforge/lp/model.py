from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence, Union

Row = dict[int, Fraction]
RowLike = Union[Mapping[int, object], Sequence[object]]

#: Largest number of variables the dense tableau accepts.
MAX_VARIABLES = 5000


def as_row(row: RowLike) -> Row:
    """Normalize a dense sequence or sparse mapping into a sparse row."""
    items = row.items() if isinstance(row, Mapping) else enumerate(row)
    out: Row = {}
    for j, a in items:
        a = Fraction(a)
        if a:
            out[int(j)] = a
    return out


def row_dot(row: Mapping[int, Fraction], y: Sequence[Fraction]) -> Fraction:
    return sum((a * y[j] for j, a in row.items()), Fraction(0))


class Status(enum.Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


@dataclass
class LinearProgram:
    """``max`` (or ``min``) of ``objective . y`` subject to equations,
    ``row . y <= rhs`` inequalities and optional per-variable lower bounds.
    Variables without a lower bound are free."""

    num_vars: int
    objective: Row = field(default_factory=dict)
    sense: str = "max"
    equations: list[tuple[Row, Fraction]] = field(default_factory=list)
    inequalities: list[tuple[Row, Fraction]] = field(default_factory=list)
    lower: dict[int, Fraction] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.sense not in ("max", "min"):
            raise ValueError(f"sense must be 'max' or 'min', got {self.sense!r}")
        self.objective = as_row(self.objective)
        self.equations = [(as_row(r), Fraction(b)) for r, b in self.equations]
        self.inequalities = [(as_row(r), Fraction(b)) for r, b in self.inequalities]
        self.lower = {int(j): Fraction(b) for j, b in self.lower.items()}
        for row, _ in self.equations + self.inequalities:
            if row and not (0 <= min(row) and max(row) < self.num_vars):
                raise ValueError("constraint row refers to a variable outside 0..num_vars-1")
        if self.objective and max(self.objective) >= self.num_vars:
            raise ValueError("objective refers to a variable outside 0..num_vars-1")

    @classmethod
    def nonnegative(cls, num_vars: int, **kwargs) -> "LinearProgram":
        return cls(num_vars, lower={j: Fraction(0) for j in range(num_vars)}, **kwargs)

    def with_objective(self, objective: RowLike, sense: str = "max") -> "LinearProgram":
        return LinearProgram(
            self.num_vars, as_row(objective), sense,
            list(self.equations), list(self.inequalities), dict(self.lower),
        )

    def bounds_as_rows(self) -> "LinearProgram":
        """Same feasible set, with lower bounds rewritten as inequalities."""
        extra = [({j: Fraction(-1)}, -b) for j, b in sorted(self.lower.items())]
        return LinearProgram(
            self.num_vars, dict(self.objective), self.sense,
            list(self.equations), list(self.inequalities) + extra, {},
        )

    def violations(self, y: Sequence[Fraction]) -> list[str]:
        """Constraints that ``y`` fails, checked exactly."""
        bad = []
        for k, (row, b) in enumerate(self.equations):
            if row_dot(row, y) != b:
                bad.append(f"equation {k}")
        for k, (row, b) in enumerate(self.inequalities):
            if row_dot(row, y) > b:
                bad.append(f"inequality {k}")
        for j, b in self.lower.items():
            if y[j] < b:
                bad.append(f"lower bound {j}")
        return bad


@dataclass
class LPResult:
    """Outcome of :func:`solve`.

    On ``OPTIMAL`` the result carries a basic optimal ``point`` and a dual
    certificate for the maximization form ``max s*c.y`` (``s = -1`` for
    ``min``): ``dual_eq`` (free), ``dual_ineq`` (nonnegative) and
    ``dual_lower`` (nonnegative) satisfy ``E'u + G'w - r = s*c`` and
    ``f.u + h.w - l.r = s*value``.
    """

    status: Status
    value: Fraction | None = None
    point: list[Fraction] | None = None
    dual_eq: list[Fraction] | None = None
    dual_ineq: list[Fraction] | None = None
    dual_lower: dict[int, Fraction] | None = None
    pivots: int = 0

    @property
    def optimal(self) -> bool:
        return self.status is Status.OPTIMAL
