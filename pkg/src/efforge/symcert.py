"""Certificate that the perfect matching polytope on ``4k+2`` nodes admits
no small coordinate-symmetric subspace extension.

The nodes split into ``V_*`` (``0..2k``) and ``V^*`` (``2k+1..4k+1``).  A
perfect matching has an odd number ``i`` of crossing edges, and the
weights ``lambda_i`` (one per class ``M*_i``) must make every averaged
containment count nonnegative while the slack of ``x(E(V_*)) <= k``
combines to ``-1``.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterator, Sequence

from .errors import DomainError
from .lp import LinearProgram, solve

ZERO, ONE = Fraction(0), Fraction(1)
#: Largest k for which concrete matchings are enumerated.
ENUM_LIMIT = 2


def lagrange_at_zero(points: Sequence[object]) -> list[Fraction]:
    """Weights ``gamma`` with ``sum f(p) gamma_p = f(0)`` for every
    polynomial of degree below ``len(points)``."""
    pts = [Fraction(p) for p in points]
    if len(set(pts)) != len(pts):
        raise DomainError(f"interpolation points must be distinct: {list(points)}")
    out = []
    for a, p in enumerate(pts):
        g = ONE
        for b, q in enumerate(pts):
            if a != b:
                g *= -q / (p - q)
        out.append(g)
    return out


def double_factorial(m: int) -> int:
    return math.prod(range(m, 0, -2)) if m > 0 else 1


def gbinom(h: Fraction | int, a: int) -> Fraction:
    """``h`` choose ``a`` for rational ``h`` (falling factorial over a!)."""
    h = Fraction(h)
    num = ONE
    for t in range(a):
        num *= h - t
    return num / math.factorial(a)


def _check_class(k: int, i: int) -> None:
    if k < 1:
        raise DomainError(f"k must be at least 1, got {k}")
    if i % 2 == 0 or not 1 <= i <= 2 * k + 1:
        raise DomainError(f"class index must be odd in 1..{2 * k + 1}, got {i}")


def count_cross_class(k: int, i: int) -> int:
    """Number of perfect matchings with exactly ``i`` crossing edges."""
    _check_class(k, i)
    return math.comb(2 * k + 1, i) ** 2 * math.factorial(i) * double_factorial(2 * k - i) ** 2


@dataclass(frozen=True, order=True)
class PatternTriple:
    a_star: int
    a_cross: int
    a_upstar: int

    def __post_init__(self) -> None:
        if min(self.a_star, self.a_cross, self.a_upstar) < 0:
            raise DomainError(f"pattern entries must be nonnegative: {self}")

    @property
    def size(self) -> int:
        return self.a_star + self.a_cross + self.a_upstar


def patterns(k: int) -> list[PatternTriple]:
    """All triples with sum at most ``k``, in lexicographic order."""
    return [PatternTriple(a, b, c) for a in range(k + 1) for b in range(k + 1 - a) for c in range(k + 1 - a - b)]


def pattern_orbit_size(k: int, pat: PatternTriple) -> int:
    """Number of partial matchings with the given pattern."""
    side = 2 * k + 1

    def choose(a: int) -> int:
        free = side - 2 * a - pat.a_cross
        if free < 0:
            return 0
        return math.factorial(side) // (2 ** a * math.factorial(a) * math.factorial(pat.a_cross) * math.factorial(free))

    return choose(pat.a_star) * choose(pat.a_upstar) * math.factorial(pat.a_cross)


def count_containing(k: int, i: int, pat: PatternTriple) -> Fraction:
    """Matchings in class ``i`` containing a fixed partial matching of
    pattern ``pat``, averaged over all partial matchings of that pattern."""
    _check_class(k, i)
    if pat.size > k:
        raise DomainError(f"pattern {pat} has more than k={k} edges")
    orbit = pattern_orbit_size(k, pat)
    if orbit == 0:
        return ZERO
    inner = Fraction(2 * k + 1 - i, 2)
    return (count_cross_class(k, i) * gbinom(inner, pat.a_star) * gbinom(i, pat.a_cross)
            * gbinom(inner, pat.a_upstar) / orbit)


# -- enumeration oracle ------------------------------------------------------

Matching = frozenset


def perfect_matchings(nodes: Sequence[int]) -> Iterator[Matching]:
    """All perfect matchings of the complete graph on ``nodes``."""
    def rec(rest: tuple[int, ...]) -> Iterator[list[tuple[int, int]]]:
        if not rest:
            yield []
            return
        a = rest[0]
        for j in range(1, len(rest)):
            for tail in rec(rest[1:j] + rest[j + 1:]):
                yield [(a, rest[j])] + tail

    for m in rec(tuple(sorted(nodes))):
        yield frozenset(m)


def crossing(k: int, edge: tuple[int, int]) -> bool:
    return (edge[0] <= 2 * k) != (edge[1] <= 2 * k)


def pattern_of(k: int, edges: Sequence[tuple[int, int]]) -> PatternTriple:
    a = sum(1 for v, w in edges if v <= 2 * k and w <= 2 * k)
    c = sum(1 for e in edges if crossing(k, e))
    return PatternTriple(a, c, len(edges) - a - c)


def partial_matchings(nodes: Sequence[int], size: int) -> Iterator[tuple[tuple[int, int], ...]]:
    edges = list(itertools.combinations(sorted(nodes), 2))
    for combo in itertools.combinations(edges, size):
        used = [v for e in combo for v in e]
        if len(set(used)) == len(used):
            yield combo


# -- certificate -------------------------------------------------------------

@dataclass
class CrossClassTable:
    k: int
    classes: list[int]
    counts: list[int]
    lambdas: list[Fraction]


@dataclass
class PatternCheck:
    pattern: PatternTriple
    value: Fraction
    passed: bool


@dataclass
class SymmetryCertificate:
    k: int
    n: int
    table: CrossClassTable
    gamma: list[Fraction]
    rho: Fraction
    slack_at_zero: Fraction
    checks: list[PatternCheck]
    slack_equation: Fraction
    concrete_checked: int = 0
    concrete_failures: list[tuple[tuple[int, int], ...]] = field(default_factory=list)

    @property
    def verdict(self) -> bool:
        return (self.slack_equation == -1 and all(c.passed for c in self.checks)
                and not self.concrete_failures)

    def to_json(self) -> dict[str, Any]:
        t = self.table
        return {
            "k": self.k,
            "n": self.n,
            "classes": [{"i": i, "count": c, "lambda": str(lam), "gamma": str(g)}
                        for i, c, lam, g in zip(t.classes, t.counts, t.lambdas, self.gamma)],
            "rho": str(self.rho),
            "slack_at_zero": str(self.slack_at_zero),
            "patterns": [{"a_star": c.pattern.a_star, "a_crossstar": c.pattern.a_cross,
                          "a_upstar": c.pattern.a_upstar, "value": str(c.value), "pass": c.passed}
                         for c in self.checks],
            "concrete": {"checked": self.concrete_checked,
                         "failures": [[list(e) for e in a] for a in self.concrete_failures]},
            "slack_equation": str(self.slack_equation),
            "verdict": self.verdict,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2) + "\n"


def build_certificate(k: int, n: int, slack_scale: object = 1,
                      enumerate_up_to: int = ENUM_LIMIT) -> SymmetryCertificate:
    """Closed-form weights and their checks.  The slack of a matching in
    class ``i`` is ``slack_scale * (i-1)/2``; the weights are rescaled so
    that the slack combination is exactly ``-1``."""
    if k < 1:
        raise DomainError(f"k must be at least 1, got {k}")
    if n < 4 * k + 2:
        raise DomainError(f"need n >= 4k+2 = {4 * k + 2}, got n={n}")
    scale = Fraction(slack_scale)
    if scale <= 0:
        raise DomainError("slack scale must be positive")
    classes = list(range(1, 2 * k + 2, 2))
    counts = [count_cross_class(k, i) for i in classes]
    gamma = lagrange_at_zero(classes)

    def slack(i: int | Fraction) -> Fraction:
        return scale * (Fraction(i) - 1) / 2

    rho = -1 / slack(0)
    lambdas = [rho * g / c for g, c in zip(gamma, counts)]
    slack_eq = sum((slack(i) * c * lam for i, c, lam in zip(classes, counts, lambdas)), ZERO)
    checks = []
    for pat in patterns(k):
        value = sum((count_containing(k, i, pat) * lam for i, lam in zip(classes, lambdas)), ZERO)
        checks.append(PatternCheck(pat, value, value >= 0))

    cert = SymmetryCertificate(k, n, CrossClassTable(k, classes, counts, lambdas), gamma, rho,
                               slack(0), checks, slack_eq)
    if k <= enumerate_up_to:
        weight = dict(zip(classes, lambdas))
        nodes = list(range(4 * k + 2))
        pms = [(m, weight[sum(1 for e in m if crossing(k, e))]) for m in perfect_matchings(nodes)]
        for size in range(k + 1):
            for A in partial_matchings(nodes, size):
                total = sum((lam for m, lam in pms if m.issuperset(A)), ZERO)
                cert.concrete_checked += 1
                if total < 0:
                    cert.concrete_failures.append(A)
    return cert


# -- generic Farkas system ---------------------------------------------------

def farkas_check(section_values: Sequence[Sequence[object]], slacks: Sequence[object]) -> list[Fraction] | None:
    """Weights ``lam`` over the points with ``sum_x s_j(x) lam_x >= 0`` for
    every row ``j`` and ``sum_x slack(x) lam_x = -1``, or ``None`` when the
    system has no solution."""
    m = len(slacks)
    rows = [[Fraction(v) for v in r] for r in section_values]
    if any(len(r) != m for r in rows):
        raise DomainError(f"every section row needs {m} entries")
    sl = [Fraction(v) for v in slacks]
    ineqs = [({x: -a for x, a in enumerate(r) if a}, ZERO) for r in rows]
    eqs = [({x: a for x, a in enumerate(sl) if a}, -ONE)]
    lp = LinearProgram(m, {}, "max", eqs, ineqs)
    res = solve(lp)
    return list(res.point) if res.optimal else None
