"""Plain-text LP export in an lp_solve-like syntax.

One objective line, then one line per inequality and one per equation, in
storage order.  Variables carry no implicit bounds: every bound of the
formulation is already one of its inequality rows.  Coefficients are
written as exact decimals when the denominator divides a power of ten and
as ``p/q`` otherwise; files containing any ``p/q`` start with the marker
line :data:`FRACTION_FLAG`.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Sequence

from .polyhedra import ExtendedFormulation

FRACTION_FLAG = "/* fraction-extended */"
_NAME_OK = re.compile(r"^[A-Za-z_][A-Za-z0-9_.\[\]]*$")


def _decimal_exponent(den: int) -> int | None:
    """Smallest ``t`` with ``den | 10**t``, or None."""
    twos = fives = 0
    while den % 2 == 0:
        den //= 2
        twos += 1
    while den % 5 == 0:
        den //= 5
        fives += 1
    return max(twos, fives) if den == 1 else None


def format_number(q: Fraction) -> tuple[str, bool]:
    """Text for ``q`` and whether it needed fraction notation."""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator), False
    t = _decimal_exponent(q.denominator)
    if t is None:
        return f"{q.numerator}/{q.denominator}", True
    scaled = abs(q.numerator) * 10 ** t // q.denominator
    whole, frac = divmod(scaled, 10 ** t)
    sign = "-" if q < 0 else ""
    return f"{sign}{whole}.{frac:0{t}d}", False


def variable_names(ef: ExtendedFormulation) -> list[str]:
    if ef.names and all(_NAME_OK.match(s) for s in ef.names) and len(set(ef.names)) == len(ef.names):
        return list(ef.names)
    return [f"y{j}" for j in range(ef.dim)]


def _linear(terms, names: list[str], const: Fraction = Fraction(0)) -> tuple[str, bool]:
    parts, frac = [], False
    for j, a in terms:
        if a == 1:
            parts.append(f"+{names[j]}")
        elif a == -1:
            parts.append(f"-{names[j]}")
        else:
            text, f = format_number(a)
            frac |= f
            parts.append(f"{'' if a < 0 else '+'}{text} {names[j]}")
    if const or not parts:
        text, f = format_number(const)
        frac |= f
        parts.append(text if const < 0 or not parts else f"+{text}")
    return " ".join(parts), frac


def export_lp(ef: ExtendedFormulation, objective: Sequence[object] | None = None) -> str:
    """LP model maximizing ``c . p(y)`` over the formulation."""
    names = variable_names(ef)
    c = [Fraction(v) for v in objective] if objective is not None else [Fraction(0)] * ef.ambient_dim
    lifted, const = ef.objective_on_y(c)
    obj, frac = _linear(sorted(lifted.items()), names, const)
    lines = [f"max: {obj};"]
    for k, con in enumerate(ef.inequalities):
        lhs, f1 = _linear(con.terms, names)
        rhs, f2 = format_number(con.rhs)
        frac |= f1 or f2
        lines.append(f"i{k}: {lhs} <= {rhs};")
    for k, con in enumerate(ef.equations):
        lhs, f1 = _linear(con.terms, names)
        rhs, f2 = format_number(con.rhs)
        frac |= f1 or f2
        lines.append(f"e{k}: {lhs} = {rhs};")
    if frac:
        lines.insert(0, FRACTION_FLAG)
    return "\n".join(lines) + "\n"
