"""Two-phase primal simplex over exact rationals.

The tableau is kept integral with one common positive denominator
(integer-preserving Bareiss pivots), so no gcd is ever computed in the
inner loop.  Entries live in an ``int64`` array while they provably fit and
move to Python integers otherwise.  Pivoting follows Bland's rule
throughout, which makes every run terminate and deterministic.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from ..errors import SizeGuardError
from . import kernels
from .model import MAX_VARIABLES, LinearProgram, LPResult, Status, row_dot

_SAFE = 1 << 31


class _Tableau:
    def __init__(self, rows: list[list[int]], basis: list[int]):
        self.m = len(rows) - 1
        big = max((abs(v) for row in rows for v in row), default=0)
        if big < _SAFE:
            self.T = np.array(rows, dtype=np.int64).reshape(len(rows), -1)
            self.kern = kernels.active
        else:
            self.T = np.array(rows, dtype=object).reshape(len(rows), -1)
            self.kern = kernels.python_kernels
        self.bound = big
        self.D = 1
        self.basis = np.array(basis, dtype=np.intp)
        self.pivots = 0

    @property
    def exact_ints(self) -> bool:
        return self.T.dtype == object

    def _to_object(self) -> None:
        self.T = self.T.astype(object)
        self.kern = kernels.python_kernels

    def set_objective(self, obj: list[int]) -> None:
        if not self.exact_ints and max(map(abs, obj)) >= _SAFE:
            self._to_object()
        self.T[self.m] = np.array(obj, dtype=self.T.dtype)
        self.bound = max(self.bound, max(map(abs, obj)))

    def pivot(self, r: int, c: int) -> None:
        big = self.kern.pivot(self.T, r, c, self.D)
        p = int(self.T[r, c])
        self.bound = max(self.bound, int(big))
        if p < 0:
            self.T = -self.T
            p = -p
        self.D = p
        self.basis[r] = c
        self.pivots += 1
        # The int64 kernels need every entry below 2**31 so that products
        # in the next pivot and ratio test cannot overflow.
        if not self.exact_ints and self.bound >= _SAFE:
            self._to_object()

    def run(self, eligible: np.ndarray) -> tuple[Status, int]:
        """Iterate Bland's rule on the objective row until optimal or
        unbounded; returns the status and, when unbounded, the column."""
        ncols = eligible.shape[0]
        while True:
            obj = self.T[self.m, :ncols]
            if not self.exact_ints:
                obj = np.ascontiguousarray(obj)
            c = self.kern.entering_bland(obj, eligible)
            if c < 0:
                return Status.OPTIMAL, -1
            r = self.kern.leaving_bland(self.T, c, self.m, self.basis)
            if r < 0:
                return Status.UNBOUNDED, c
            self.pivot(r, c)

    def delete_row(self, r: int) -> None:
        self.T = np.delete(self.T, r, axis=0)
        self.basis = np.delete(self.basis, r)
        self.m -= 1

    def value(self, r: int, col: int) -> Fraction:
        return Fraction(int(self.T[r, col]), self.D)


def _lcm_denominators(values) -> int:
    out = 1
    for v in values:
        out = math.lcm(out, v.denominator)
    return out


def solve(lp: LinearProgram) -> LPResult:
    """Exact optimum of ``lp``; see :class:`LPResult` for the certificate."""
    if lp.num_vars > MAX_VARIABLES:
        raise SizeGuardError(f"{lp.num_vars} variables exceed the dense tableau limit {MAX_VARIABLES}")
    sign = 1 if lp.sense == "max" else -1

    # Structural columns: one per bounded variable (shifted by its bound),
    # a +/- pair per free variable.
    pos_col: list[int] = []
    neg_col: list[int | None] = []
    ns = 0
    for j in range(lp.num_vars):
        pos_col.append(ns)
        ns += 1
        if j in lp.lower:
            neg_col.append(None)
        else:
            neg_col.append(ns)
            ns += 1

    cons = [(row, rhs, False) for row, rhs in lp.equations]
    cons += [(row, rhs, True) for row, rhs in lp.inequalities]
    m = len(cons)
    n_slack = len(lp.inequalities)

    int_rows: list[list[int]] = []
    factors: list[int] = []
    needs_art: list[bool] = []
    slack_of: list[int | None] = []
    s = 0
    for row, rhs, is_ineq in cons:
        shifted = rhs - sum((a * lp.lower[j] for j, a in row.items() if j in lp.lower), Fraction(0))
        L = _lcm_denominators(list(row.values()) + [shifted])
        f = -L if shifted < 0 else L
        dense = [0] * ns
        for j, a in row.items():
            v = int(a * f)
            dense[pos_col[j]] = v
            if neg_col[j] is not None:
                dense[neg_col[j]] = -v
        slack_part = [0] * n_slack
        if is_ineq:
            slack_part[s] = 1 if f > 0 else -1
            slack_of.append(ns + s)
            s += 1
        else:
            slack_of.append(None)
        factors.append(f)
        needs_art.append(not (is_ineq and f > 0))
        int_rows.append(dense + slack_part + [int(shifted * f)])

    art_rows = [i for i in range(m) if needs_art[i]]
    n_art = len(art_rows)
    ncols = ns + n_slack + n_art
    art_start = ns + n_slack
    rows: list[list[int]] = []
    basis: list[int] = []
    ident: list[int] = []
    a = 0
    for i, r in enumerate(int_rows):
        art = [0] * n_art
        if needs_art[i]:
            art[a] = 1
            basis.append(art_start + a)
            ident.append(art_start + a)
            a += 1
        else:
            basis.append(slack_of[i])
            ident.append(slack_of[i])
        rows.append(r[:-1] + art + [r[-1]])

    # Phase 1: maximize minus the sum of artificials.
    p1 = [0] * (ncols + 1)
    for i in art_rows:
        for j, v in enumerate(rows[i]):
            p1[j] += v
    for j in range(art_start, ncols):
        p1[j] = 0
    tab = _Tableau(rows + [p1], basis)
    if n_art:
        tab.run(np.ones(ncols, dtype=np.uint8))
        if tab.T[tab.m, ncols] != 0:
            return LPResult(Status.INFEASIBLE, pivots=tab.pivots)
        # Drive zero-level artificials out of the basis; rows with no
        # structural or slack entry left are redundant and dropped.
        i = 0
        while i < tab.m:
            if tab.basis[i] >= art_start:
                nz = np.flatnonzero(tab.T[i, :art_start] != 0)
                if nz.size:
                    tab.pivot(i, int(nz[0]))
                else:
                    tab.delete_row(i)
                    continue
            i += 1

    # Phase 2 objective row: D*c - sum_i c_B(i) * T_i, with c scaled to integers.
    cvals = [Fraction(0)] * ns
    for j, cj in lp.objective.items():
        cvals[pos_col[j]] = sign * cj
        if neg_col[j] is not None:
            cvals[neg_col[j]] = -sign * cj
    sc = _lcm_denominators(cvals)
    cint = [int(v * sc) for v in cvals] + [0] * (n_slack + n_art + 1)
    obj = [tab.D * v for v in cint]
    for i in range(tab.m):
        cb = cint[tab.basis[i]]
        if cb:
            rowv = tab.T[i]
            for j in np.flatnonzero(rowv):
                obj[j] -= cb * int(rowv[j])
    tab.set_objective(obj)
    eligible = np.zeros(ncols, dtype=np.uint8)
    eligible[:art_start] = 1
    status, _ = tab.run(eligible)
    if status is Status.UNBOUNDED:
        return LPResult(Status.UNBOUNDED, pivots=tab.pivots)

    xs = [Fraction(0)] * ncols
    for i in range(tab.m):
        xs[tab.basis[i]] = tab.value(i, ncols)
    point = []
    for j in range(lp.num_vars):
        if j in lp.lower:
            point.append(lp.lower[j] + xs[pos_col[j]])
        else:
            point.append(xs[pos_col[j]] - xs[neg_col[j]])
    value = row_dot(lp.objective, point)

    # Rows dropped as redundant keep their identity column in the tableau,
    # so every original row's multiplier is read, not only surviving ones.
    duals = [factors[i] * -tab.value(tab.m, ident[i]) / sc for i in range(m)]
    n_eq = len(lp.equations)
    result = LPResult(
        Status.OPTIMAL, value, point,
        dual_eq=duals[:n_eq], dual_ineq=duals[n_eq:], pivots=tab.pivots,
    )
    red = _reduced_costs(lp, result, sign)
    result.dual_lower = {j: red[j] for j in lp.lower}
    _check_certificate(lp, result, sign, red)
    return result


def _reduced_costs(lp: LinearProgram, res: LPResult, sign: int) -> list[Fraction]:
    lhs = [Fraction(0)] * lp.num_vars
    for (row, _), u in zip(lp.equations, res.dual_eq):
        if u:
            for j, a in row.items():
                lhs[j] += u * a
    for (row, _), w in zip(lp.inequalities, res.dual_ineq):
        if w:
            for j, a in row.items():
                lhs[j] += w * a
    return [lhs[j] - sign * lp.objective.get(j, Fraction(0)) for j in range(lp.num_vars)]


def _check_certificate(lp: LinearProgram, res: LPResult, sign: int, red: list[Fraction]) -> None:
    """Exact primal and dual feasibility plus zero duality gap; a failure
    here is a solver bug, never a property of the input."""
    bad = lp.violations(res.point)
    if any(w < 0 for w in res.dual_ineq):
        bad.append("negative inequality dual")
    for j in range(lp.num_vars):
        if j in lp.lower:
            if red[j] < 0:
                bad.append(f"negative bound dual {j}")
        elif red[j] != 0:
            bad.append(f"nonzero reduced cost on free variable {j}")
    dual_obj = sum((u * b for (_, b), u in zip(lp.equations, res.dual_eq)), Fraction(0))
    dual_obj += sum((w * b for (_, b), w in zip(lp.inequalities, res.dual_ineq)), Fraction(0))
    dual_obj -= sum((lp.lower[j] * r for j, r in res.dual_lower.items()), Fraction(0))
    if dual_obj != sign * res.value:
        bad.append(f"duality gap: primal {sign * res.value} vs dual {dual_obj}")
    if bad:
        raise RuntimeError("simplex certificate check failed: " + "; ".join(bad[:5]))
