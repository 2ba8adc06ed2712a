"""Indexing of the complete graph K_n and brute-force combinatorial oracles.

Nodes are numbered ``1..n`` on the public surface.  Edges are numbered
``0..C(n,2)-1`` in lexicographic order of ``(min node, max node)``, and that
order fixes every serialized coordinate order in the package.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .errors import DomainError, SizeGuardError

#: Largest n accepted by the matching and cycle enumerators.
MAX_ENUM_NODES = 16


@dataclass(frozen=True)
class CompleteGraphContext:
    n: int

    def __post_init__(self) -> None:
        if not isinstance(self.n, int) or self.n < 1:
            raise DomainError(f"node count must be a positive integer, got {self.n!r}")

    @property
    def num_edges(self) -> int:
        return self.n * (self.n - 1) // 2

    @property
    def nodes(self) -> range:
        return range(1, self.n + 1)

    @cached_property
    def edges(self) -> tuple[tuple[int, int], ...]:
        """All edges as 1-based node pairs, in index order."""
        return tuple(itertools.combinations(range(1, self.n + 1), 2))

    def index(self, v: int, w: int) -> int:
        """Position of the edge ``{v, w}``; symmetric in its arguments."""
        if v == w:
            raise DomainError(f"no loop edges in K_n: {{{v}, {w}}}")
        if not (1 <= v <= self.n and 1 <= w <= self.n):
            raise DomainError(f"node out of range 1..{self.n}: {{{v}, {w}}}")
        a, b = (v - 1, w - 1) if v < w else (w - 1, v - 1)
        return a * self.n - a * (a + 1) // 2 + (b - a - 1)

    def pair(self, e: int) -> tuple[int, int]:
        if not 0 <= e < self.num_edges:
            raise DomainError(f"edge position out of range: {e}")
        return self.edges[e]

    def subset(self, edges: Iterable[int]) -> "EdgeSubset":
        return EdgeSubset(self, frozenset(edges))

    def subset_from_pairs(self, pairs: Iterable[tuple[int, int]]) -> "EdgeSubset":
        return EdgeSubset(self, frozenset(self.index(v, w) for v, w in pairs))

    def delta(self, nodes: Iterable[int]) -> list[int]:
        """Edge positions with exactly one endpoint in ``nodes``."""
        inside = set(nodes)
        return [e for e, (v, w) in enumerate(self.edges) if (v in inside) != (w in inside)]

    def induced(self, nodes: Iterable[int]) -> list[int]:
        """Edge positions with both endpoints in ``nodes``."""
        inside = set(nodes)
        return [e for e, (v, w) in enumerate(self.edges) if v in inside and w in inside]


@dataclass(frozen=True)
class EdgeSubset:
    ctx: CompleteGraphContext
    edges: frozenset[int]

    def __post_init__(self) -> None:
        bad = [e for e in self.edges if not 0 <= e < self.ctx.num_edges]
        if bad:
            raise DomainError(f"invalid edge positions {sorted(bad)} for n={self.ctx.n}")

    def __contains__(self, e: int) -> bool:
        return e in self.edges

    def __len__(self) -> int:
        return len(self.edges)

    def pairs(self) -> list[tuple[int, int]]:
        return [self.ctx.pair(e) for e in sorted(self.edges)]

    def nodes(self) -> set[int]:
        return {v for e in self.edges for v in self.ctx.pair(e)}

    def vector(self) -> list[Fraction]:
        """Characteristic vector over all edge positions."""
        return [Fraction(int(e in self.edges)) for e in range(self.ctx.num_edges)]

    def weight(self, weights: Sequence[Fraction]) -> Fraction:
        return sum((Fraction(weights[e]) for e in self.edges), Fraction(0))


def _guard(ctx: CompleteGraphContext) -> None:
    if ctx.n > MAX_ENUM_NODES:
        raise SizeGuardError(f"brute-force enumeration refused for n={ctx.n} > {MAX_ENUM_NODES}")


def enumerate_matchings(ctx: CompleteGraphContext, ell: int) -> list[EdgeSubset]:
    """All matchings of K_n with exactly ``ell`` edges."""
    if not 0 <= 2 * ell <= ctx.n:
        raise DomainError(f"matching size must satisfy 0 <= ell <= n/2, got ell={ell}, n={ctx.n}")
    _guard(ctx)
    n = ctx.n
    out: list[EdgeSubset] = []

    # Grow matchings edge by edge in increasing edge position.
    def grow(start: int, used: int, chosen: list[int]) -> None:
        if len(chosen) == ell:
            out.append(EdgeSubset(ctx, frozenset(chosen)))
            return
        for e in range(start, ctx.num_edges):
            v, w = ctx.edges[e]
            bits = (1 << (v - 1)) | (1 << (w - 1))
            if used & bits:
                continue
            # Not enough edge positions left to finish.
            if ctx.num_edges - e < ell - len(chosen):
                break
            chosen.append(e)
            grow(e + 1, used | bits, chosen)
            chosen.pop()

    if n >= 1:
        grow(0, 0, [])
    return out


def enumerate_cycles(ctx: CompleteGraphContext, ell: int) -> list[EdgeSubset]:
    """All simple cycles of K_n on exactly ``ell`` nodes, as edge sets."""
    if not 3 <= ell <= ctx.n:
        raise DomainError(f"cycle length must satisfy 3 <= ell <= n, got ell={ell}, n={ctx.n}")
    _guard(ctx)
    out = []
    for nodes in itertools.combinations(ctx.nodes, ell):
        first, rest = nodes[0], nodes[1:]
        for perm in itertools.permutations(rest):
            # Each cycle appears twice (once per direction); keep one.
            if perm[0] > perm[-1]:
                continue
            tour = (first, *perm)
            out.append(ctx.subset_from_pairs(zip(tour, tour[1:] + tour[:1])))
    return out


def enumerate_spanning_trees(ctx: CompleteGraphContext) -> list[EdgeSubset]:
    """All spanning trees of K_n, decoded from Pruefer sequences."""
    n = ctx.n
    if n == 1:
        return [EdgeSubset(ctx, frozenset())]
    if n == 2:
        return [ctx.subset([0])]
    if n > 9:
        raise SizeGuardError(f"spanning tree enumeration refused for n={n} > 9")
    trees = []
    for seq in itertools.product(range(1, n + 1), repeat=n - 2):
        degree = [1] * (n + 1)
        for v in seq:
            degree[v] += 1
        pairs = []
        for v in seq:
            leaf = next(u for u in range(1, n + 1) if degree[u] == 1)
            pairs.append((leaf, v))
            degree[leaf] -= 1
            degree[v] -= 1
        u, w = (x for x in range(1, n + 1) if degree[x] == 1)
        pairs.append((u, w))
        trees.append(ctx.subset_from_pairs(pairs))
    return trees


def is_spanning_tree(subset: EdgeSubset) -> bool:
    ctx = subset.ctx
    if len(subset) != ctx.n - 1:
        return False
    parent = list(range(ctx.n + 1))

    def find(v: int) -> int:
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for v, w in subset.pairs():
        rv, rw = find(v), find(w)
        if rv == rw:
            return False
        parent[rv] = rw
    return True


def brute_force_optimum(
    family: Sequence[EdgeSubset], weights: Sequence[Fraction]
) -> tuple[Fraction, EdgeSubset]:
    """Maximum total weight over ``family``; the first maximizer wins ties."""
    if not family:
        raise DomainError("brute_force_optimum needs a non-empty family")
    best, arg = None, None
    for member in family:
        value = member.weight(weights)
        if best is None or value > best:
            best, arg = value, member
    return best, arg
