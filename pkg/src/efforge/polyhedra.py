"""Extended formulations: a polyhedron ``Q`` in R^d given by equations and
``<=``-inequalities, together with an affine map ``p(y) = T y + t`` into
the ambient space R^m of the polytope it describes.

Nonnegativity constraints are stored as ordinary ``-y_j <= 0`` rows, so
:meth:`ExtendedFormulation.size` counts them, and equations are never
counted.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable, Mapping, Sequence

from . import linalg
from .errors import DomainError, InfeasibleError
from .lp import LinearProgram, Status, is_feasible, remove_redundant, solve

Terms = tuple[tuple[int, Fraction], ...]
ZERO = Fraction(0)


def make_terms(row: Mapping[int, object] | Sequence[object]) -> Terms:
    items = row.items() if isinstance(row, Mapping) else enumerate(row)
    acc: dict[int, Fraction] = {}
    for j, a in items:
        acc[int(j)] = acc.get(int(j), ZERO) + Fraction(a)
    return tuple((j, a) for j, a in sorted(acc.items()) if a)


def dot(terms: Terms, y: Sequence[Fraction]) -> Fraction:
    return sum((a * y[j] for j, a in terms), ZERO)


def parse_rational(text: str | int) -> Fraction:
    return Fraction(text)


def format_rational(q: Fraction) -> str:
    return str(Fraction(q))


@dataclass(frozen=True)
class Constraint:
    terms: Terms
    rhs: Fraction

    def row(self) -> dict[int, Fraction]:
        return dict(self.terms)

    def is_nonnegativity(self) -> bool:
        return self.rhs == 0 and len(self.terms) == 1 and self.terms[0][1] < 0


@dataclass(frozen=True)
class ExtendedFormulation:
    dim: int
    ambient_dim: int
    equations: tuple[Constraint, ...]
    inequalities: tuple[Constraint, ...]
    projection_matrix: tuple[Terms, ...]
    projection_offset: tuple[Fraction, ...]
    names: tuple[str, ...] | None = None
    meta: dict[str, Any] = field(default_factory=dict, compare=False)

    def __post_init__(self) -> None:
        if len(self.projection_matrix) != self.ambient_dim or len(self.projection_offset) != self.ambient_dim:
            raise DomainError("projection must have one row and one offset per ambient coordinate")
        for terms in [c.terms for c in self.equations + self.inequalities] + list(self.projection_matrix):
            if terms and not (terms[0][0] >= 0 and terms[-1][0] < self.dim):
                raise DomainError("a row refers to a variable outside 0..dim-1")
        if self.names is not None and len(self.names) != self.dim:
            raise DomainError("names must list one entry per variable")

    def size(self) -> int:
        return len(self.inequalities)

    @property
    def blocks(self) -> int:
        return int(self.meta.get("blocks", 1))

    def project(self, y: Sequence[Fraction]) -> list[Fraction]:
        return [dot(row, y) + t for row, t in zip(self.projection_matrix, self.projection_offset)]

    def violations(self, y: Sequence[Fraction]) -> list[str]:
        bad = [f"equation {k}" for k, c in enumerate(self.equations) if dot(c.terms, y) != c.rhs]
        bad += [f"inequality {k}" for k, c in enumerate(self.inequalities) if dot(c.terms, y) > c.rhs]
        return bad

    def to_lp(self, objective: Mapping[int, Fraction] | None = None, use_bounds: bool = True) -> LinearProgram:
        """The defining system as an LP over ``y``.  With ``use_bounds``,
        single-variable rows ``a*y_j <= b`` with ``a < 0`` become lower
        bounds, which the simplex handles without extra rows."""
        lower: dict[int, Fraction] = {}
        ineqs = []
        for c in self.inequalities:
            if use_bounds and len(c.terms) == 1 and c.terms[0][1] < 0:
                j, a = c.terms[0]
                b = c.rhs / a
                lower[j] = max(lower.get(j, b), b)
            else:
                ineqs.append((c.row(), c.rhs))
        return LinearProgram(
            self.dim, dict(objective or {}), "max",
            [(c.row(), c.rhs) for c in self.equations], ineqs, lower,
        )

    def objective_on_y(self, c: Sequence[Fraction]) -> tuple[dict[int, Fraction], Fraction]:
        """``T'c`` as a sparse row, and the constant ``<c, t>``."""
        if len(c) != self.ambient_dim:
            raise DomainError(f"objective has length {len(c)}, expected {self.ambient_dim}")
        lifted: dict[int, Fraction] = {}
        for ci, row in zip(c, self.projection_matrix):
            ci = Fraction(ci)
            if ci:
                for j, a in row:
                    lifted[j] = lifted.get(j, ZERO) + ci * a
        const = sum((Fraction(ci) * t for ci, t in zip(c, self.projection_offset)), ZERO)
        return lifted, const

    # -- serialization -------------------------------------------------

    def to_json(self) -> dict[str, Any]:
        def enc(c: Constraint) -> dict[str, Any]:
            return {"terms": [[j, format_rational(a)] for j, a in c.terms], "rhs": format_rational(c.rhs)}

        out: dict[str, Any] = {
            "dim": self.dim,
            "ambient_dim": self.ambient_dim,
            "equations": [enc(c) for c in self.equations],
            "inequalities": [enc(c) for c in self.inequalities],
            "projection_matrix": [[[j, format_rational(a)] for j, a in row] for row in self.projection_matrix],
            "projection_offset": [format_rational(t) for t in self.projection_offset],
        }
        if self.names is not None:
            out["names"] = list(self.names)
        if self.meta:
            out["meta"] = dict(self.meta)
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), separators=(",", ":")) + "\n"

    @classmethod
    def from_json(cls, data: Mapping[str, Any]) -> "ExtendedFormulation":
        def dec(c: Mapping[str, Any]) -> Constraint:
            return Constraint(make_terms({j: parse_rational(a) for j, a in c["terms"]}), parse_rational(c["rhs"]))

        return cls(
            dim=int(data["dim"]),
            ambient_dim=int(data.get("ambient_dim", len(data["projection_offset"]))),
            equations=tuple(dec(c) for c in data["equations"]),
            inequalities=tuple(dec(c) for c in data["inequalities"]),
            projection_matrix=tuple(
                make_terms({j: parse_rational(a) for j, a in row}) for row in data["projection_matrix"]
            ),
            projection_offset=tuple(parse_rational(t) for t in data["projection_offset"]),
            names=tuple(data["names"]) if "names" in data else None,
            meta=dict(data.get("meta", {})),
        )

    @classmethod
    def loads(cls, text: str) -> "ExtendedFormulation":
        return cls.from_json(json.loads(text))


@dataclass(frozen=True)
class SubspaceExtension(ExtendedFormulation):
    """An extension whose only inequalities are ``y_j >= 0``, one per variable."""

    def __post_init__(self) -> None:
        super().__post_init__()
        expected = [Constraint(((j, Fraction(-1)),), ZERO) for j in range(self.dim)]
        if list(self.inequalities) != expected:
            raise DomainError("a subspace extension has exactly the nonnegativity inequalities")


class FormulationBuilder:
    """Incremental construction of an :class:`ExtendedFormulation`."""

    def __init__(self, ambient_dim: int):
        self.ambient_dim = ambient_dim
        self.names: list[str] = []
        self.equations: list[Constraint] = []
        self.inequalities: list[Constraint] = []
        self.projection: list[dict[int, Fraction]] = [{} for _ in range(ambient_dim)]
        self.offset = [ZERO] * ambient_dim

    @property
    def dim(self) -> int:
        return len(self.names)

    def var(self, name: str) -> int:
        self.names.append(name)
        return len(self.names) - 1

    def eq(self, row, rhs) -> None:
        self.equations.append(Constraint(make_terms(row), Fraction(rhs)))

    def le(self, row, rhs) -> None:
        self.inequalities.append(Constraint(make_terms(row), Fraction(rhs)))

    def ge(self, row, rhs) -> None:
        self.le({j: -Fraction(a) for j, a in make_terms(row)}, -Fraction(rhs))

    def nonneg(self, j: int) -> None:
        self.inequalities.append(Constraint(((j, Fraction(-1)),), ZERO))

    def project(self, coord: int, var: int, coeff=1) -> None:
        row = self.projection[coord]
        row[var] = row.get(var, ZERO) + Fraction(coeff)

    def build(self, **meta) -> ExtendedFormulation:
        return ExtendedFormulation(
            dim=self.dim,
            ambient_dim=self.ambient_dim,
            equations=tuple(self.equations),
            inequalities=tuple(self.inequalities),
            projection_matrix=tuple(make_terms(r) for r in self.projection),
            projection_offset=tuple(self.offset),
            names=tuple(self.names),
            meta=meta,
        )


def polytope(inequalities: Iterable[tuple[Sequence[object], object]],
             equations: Iterable[tuple[Sequence[object], object]] = (),
             dim: int | None = None) -> ExtendedFormulation:
    """A plain H-description ``{x : ...}`` with the identity projection."""
    ineqs = [Constraint(make_terms(r), Fraction(b)) for r, b in inequalities]
    eqs = [Constraint(make_terms(r), Fraction(b)) for r, b in equations]
    rows = [c.terms for c in ineqs + eqs]
    m = max((t[-1][0] + 1 for t in rows if t), default=0) if dim is None else dim
    return ExtendedFormulation(
        dim=m, ambient_dim=m, equations=tuple(eqs), inequalities=tuple(ineqs),
        projection_matrix=tuple(((i, Fraction(1)),) for i in range(m)),
        projection_offset=tuple([ZERO] * m),
    )


# -- operations ------------------------------------------------------------

@dataclass
class OptimizeResult:
    status: Status
    value: Fraction | None = None
    x: list[Fraction] | None = None
    y: list[Fraction] | None = None


def optimize(ef: ExtendedFormulation, c: Sequence[object]) -> OptimizeResult:
    """``max <c, x>`` over ``p(Q)``, solved as ``max <T'c, y> + <c, t>``."""
    lifted, const = ef.objective_on_y([Fraction(v) for v in c])
    res = solve(ef.to_lp(lifted))
    if res.status is Status.INFEASIBLE:
        raise InfeasibleError("the extension is empty")
    if res.status is Status.UNBOUNDED:
        return OptimizeResult(Status.UNBOUNDED)
    return OptimizeResult(Status.OPTIMAL, res.value + const, ef.project(res.point), res.point)


def fiber_lp(ef: ExtendedFormulation, x: Sequence[object]) -> LinearProgram:
    if len(x) != ef.ambient_dim:
        raise DomainError(f"point has length {len(x)}, expected {ef.ambient_dim}")
    lp = ef.to_lp()
    for row, t, xi in zip(ef.projection_matrix, ef.projection_offset, x):
        lp.equations.append((dict(row), Fraction(xi) - t))
    return lp


def contains_in_fiber(ef: ExtendedFormulation, x: Sequence[object]) -> bool:
    """Whether some ``y`` in ``Q`` projects to ``x``."""
    return is_feasible(fiber_lp(ef, x))[0]


def slack_representation(ef: ExtendedFormulation) -> SubspaceExtension:
    """Re-express ``Q`` through the slacks ``z = b - A y`` of an irredundant
    description ``{y in aff(Q) : A y <= b}``.

    The result lives in R^f (f = number of irredundant inequalities), is
    the nonnegative orthant cut by the affine image of ``aff(Q)``, and
    carries the projection ``p`` composed with an affine inverse of the
    slack map on that image.  Rows of ``A`` are not normalized: positive
    row scaling leaves the slack polyhedron unchanged up to coordinate
    scaling and preserves the size.
    """
    reduced = remove_redundant(ef.to_lp(use_bounds=False))
    d = ef.dim
    A = [[row.get(j, ZERO) for j in range(d)] for row, _ in reduced.inequalities]
    b = [rhs for _, rhs in reduced.inequalities]
    f = len(A)
    ok, y0 = is_feasible(reduced)
    if not ok:
        raise InfeasibleError("slack representation of an empty extension")
    E = [[row.get(j, ZERO) for j in range(d)] for row, _ in reduced.equations]
    N = linalg.nullspace(E, d)  # columns of the direction space, as vectors
    k = len(N)
    Ncols = [[N[c][j] for c in range(k)] for j in range(d)]  # d x k
    M = [[-v for v in row] for row in linalg.matmul(A, Ncols)] if k else [[] for _ in range(f)]
    z0 = [b[i] - sum((A[i][j] * y0[j] for j in range(d) if A[i][j]), ZERO) for i in range(f)]

    # Equations of the affine image z0 + col(M).
    W = linalg.left_nullspace(M, f, k) if k else [[Fraction(int(i == j)) for j in range(f)] for i in range(f)]
    equations = []
    for w in W:
        terms = make_terms({i: w[i] for i in range(f) if w[i]})
        equations.append(Constraint(terms, sum((w[i] * z0[i] for i in range(f)), ZERO)))

    # Ambient image of the lineality directions must vanish.
    T = [[dict(row).get(j, ZERO) for j in range(d)] for row in ef.projection_matrix]
    TN = linalg.matmul(T, Ncols) if k else [[] for _ in range(ef.ambient_dim)]
    for v in linalg.nullspace(M, k) if k else []:
        if any(sum((TN[i][c] * v[c] for c in range(k)), ZERO) for i in range(ef.ambient_dim)):
            raise DomainError("the projection is not constant along the lineality space")

    # Invertible square block M[R, B]: B independent columns, R independent rows.
    if k:
        _, B = linalg.rref(M, k)
        MB = [[M[i][c] for c in B] for i in range(f)]
        _, R = linalg.rref([[MB[i][c] for i in range(f)] for c in range(len(B))], f)
        inv = linalg.inverse([[MB[i][c] for c in range(len(B))] for i in R])
        # x = T y0 + t + (T N_B) inv (z_R - z0_R)
        G = linalg.matmul([[TN[i][c] for c in B] for i in range(ef.ambient_dim)], inv)
    else:
        R, G = [], [[] for _ in range(ef.ambient_dim)]
    base = ef.project(y0)
    proj_rows, offset = [], []
    for i in range(ef.ambient_dim):
        row = {R[r]: G[i][r] for r in range(len(R)) if G[i][r]}
        proj_rows.append(make_terms(row))
        offset.append(base[i] - sum((G[i][r] * z0[R[r]] for r in range(len(R))), ZERO))

    return SubspaceExtension(
        dim=f,
        ambient_dim=ef.ambient_dim,
        equations=tuple(equations),
        inequalities=tuple(Constraint(((j, Fraction(-1)),), ZERO) for j in range(f)),
        projection_matrix=tuple(proj_rows),
        projection_offset=tuple(offset),
        names=tuple(f"s{i}" for i in range(f)),
        meta={"source_size": ef.size()},
    )


# -- verification harness -------------------------------------------------

def random_objectives(m: int, count: int, seed: int, low: int = -10, high: int = 10) -> list[list[Fraction]]:
    """Deterministic pseudo-random integer objectives."""
    rng = random.Random(seed)
    return [[Fraction(rng.randint(low, high)) for _ in range(m)] for _ in range(count)]


def unit_objectives(m: int) -> list[list[Fraction]]:
    out = []
    for i in range(m):
        for s in (1, -1):
            v = [ZERO] * m
            v[i] = Fraction(s)
            out.append(v)
    return out


def max_over(vertices: Sequence[Sequence[Fraction]], c: Sequence[Fraction]) -> Fraction:
    return max(sum((a * b for a, b in zip(v, c)), ZERO) for v in vertices)


@dataclass
class ObjectiveGap:
    objective: list[Fraction]
    formulation_value: Fraction | None
    oracle_value: Fraction


@dataclass
class ProjectionReport:
    vertices_checked: int = 0
    objectives_checked: int = 0
    vertex_failures: list[int] = field(default_factory=list)
    objective_failures: list[ObjectiveGap] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.vertex_failures and not self.objective_failures


def verify_projection_equals(
    ef: ExtendedFormulation,
    vertex_list: Sequence[Sequence[object]],
    objective_suite: Sequence[Sequence[object]],
) -> ProjectionReport:
    """Compare ``p(Q)`` with ``conv(vertex_list)``.

    Fiber feasibility of every listed vertex proves ``conv(vertices)`` is
    contained in ``p(Q)``; agreement of the optimum with the vertex maximum
    on each objective is evidence for the reverse inclusion.  Failures are
    collected, never raised.
    """
    if not vertex_list:
        raise DomainError("verify_projection_equals needs at least one vertex")
    verts = [[Fraction(v) for v in x] for x in vertex_list]
    report = ProjectionReport()
    for idx, x in enumerate(verts):
        report.vertices_checked += 1
        if not contains_in_fiber(ef, x):
            report.vertex_failures.append(idx)
    for c in objective_suite:
        c = [Fraction(v) for v in c]
        report.objectives_checked += 1
        oracle = max_over(verts, c)
        try:
            res = optimize(ef, c)
            got = res.value if res.status is Status.OPTIMAL else None
        except InfeasibleError:
            got = None
        if got != oracle:
            report.objective_failures.append(ObjectiveGap(c, got, oracle))
    return report
