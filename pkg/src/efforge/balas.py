"""Extension of the convex hull of a union of polytopes, built from
extensions of the individual polytopes.

For blocks ``Q_i = {y : A_i y <= b_i, B_i y = c_i}`` with projections
``p_i(y) = T_i y + t_i`` the result has variables ``(y_1, .., y_q, lam)``
and constraints

    A_i y_i <= lam_i b_i,   B_i y_i = lam_i c_i,   lam_i >= 0,   sum lam = 1,

projected by ``sum_i T_i y_i + lam_i t_i``.  Its size is exactly
``sum_i (size_i + 1)``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .errors import DomainError, InfeasibleError, UnboundedError
from .lp import LinearProgram, is_feasible, solve
from .polyhedra import ExtendedFormulation, FormulationBuilder

ONE = Fraction(1)


def recession_is_trivial(ef: ExtendedFormulation) -> bool:
    """Whether ``{y : A y <= 0, B y = 0}`` is just the origin."""
    eqs = [(c.row(), Fraction(0)) for c in ef.equations]
    ineqs = [(c.row(), Fraction(0)) for c in ef.inequalities]
    nonneg = {c.terms[0][0] for c in ef.inequalities if c.is_nonnegativity()}
    if len(nonneg) == ef.dim:
        # Inside the orthant any nonzero ray has positive coordinate sum.
        cap = ({j: ONE for j in range(ef.dim)}, ONE)
        lp = LinearProgram(ef.dim, {j: ONE for j in range(ef.dim)}, "max", eqs, ineqs + [cap])
        return solve(lp).value == 0
    for j in range(ef.dim):
        for s in (ONE, -ONE):
            box = [({j: s}, ONE)]
            res = solve(LinearProgram(ef.dim, {j: s}, "max", eqs, ineqs + box))
            if res.value != 0:
                return False
    return True


def union_extension(blocks: Sequence[ExtendedFormulation], names: Sequence[str] | None = None,
                    check: bool = True, **meta) -> ExtendedFormulation:
    """Extension of ``conv(p_1(Q_1) u ... u p_q(Q_q))``.

    Every block must be nonempty and bounded; with ``check`` both are
    verified by LP.  Empty blocks have to be dropped by the caller.
    """
    if not blocks:
        raise DomainError("union_extension needs at least one block")
    m = blocks[0].ambient_dim
    if any(b.ambient_dim != m for b in blocks):
        raise DomainError("blocks must share the ambient dimension")
    if check:
        for i, blk in enumerate(blocks):
            if not is_feasible(blk.to_lp())[0]:
                raise InfeasibleError(f"block {i} is empty; drop it before forming the union")
            if not recession_is_trivial(blk):
                raise UnboundedError(f"block {i} is unbounded; homogenization would be unsound")

    out = FormulationBuilder(m)
    lams = []
    for i, blk in enumerate(blocks):
        tag = names[i] if names else f"b{i}"
        base = out.dim
        for j in range(blk.dim):
            out.var(f"{tag}.{blk.names[j]}" if blk.names else f"{tag}.y{j}")
        lam = out.var(f"{tag}.lam")
        lams.append(lam)
        for c in blk.inequalities:
            row = {base + j: a for j, a in c.terms}
            if c.rhs:
                row[lam] = -c.rhs
            out.le(row, 0)
        out.nonneg(lam)
        for c in blk.equations:
            row = {base + j: a for j, a in c.terms}
            if c.rhs:
                row[lam] = -c.rhs
            out.eq(row, 0)
        for coord, (row, t) in enumerate(zip(blk.projection_matrix, blk.projection_offset)):
            for j, a in row:
                out.project(coord, base + j, a)
            if t:
                out.project(coord, lam, t)
    out.eq({lam: ONE for lam in lams}, 1)
    meta.setdefault("blocks", len(blocks))
    ef = out.build(**meta)
    expected = sum(b.size() + 1 for b in blocks)
    if ef.size() != expected:  # pragma: no cover - structural identity
        raise AssertionError(f"union size {ef.size()} != {expected}")
    return ef
