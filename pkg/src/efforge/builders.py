"""Concrete extended formulations over the edge space of K_n: spanning
trees, matchings with ``ell`` edges and cycles of length ``ell``."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Sequence, Union

from .balas import union_extension
from .errors import DomainError, InfeasibleError
from .graph import CompleteGraphContext, EdgeSubset, is_spanning_tree
from .hashfam import HashFamily, certify
from .polyhedra import ExtendedFormulation, FormulationBuilder

ONE = Fraction(1)


# -- spanning trees --------------------------------------------------------

def _tree_z_index(n: int) -> dict[tuple[int, int, int], int]:
    """Positions of the ``z`` variables keyed by (edge, v, u)."""
    ctx = CompleteGraphContext(n)
    out = {}
    j = ctx.num_edges
    for e, pair in enumerate(ctx.edges):
        for v in pair:
            for u in ctx.nodes:
                if u not in pair:
                    out[e, v, u] = j
                    j += 1
    return out


def build_spanning_tree_ef(n: int) -> ExtendedFormulation:
    """Extension of the spanning tree polytope of K_n with variables
    ``x_e`` and ``z_{e,v,u}`` (``v`` in ``e``, ``u`` outside it)."""
    if not isinstance(n, int) or n < 2:
        raise DomainError(f"spanning tree formulation needs n >= 2, got {n!r}")
    ctx = CompleteGraphContext(n)
    out = FormulationBuilder(ctx.num_edges)
    for e, (v, w) in enumerate(ctx.edges):
        out.var(f"x_{v}_{w}")
        out.project(e, e)
    zidx = _tree_z_index(n)
    for (e, v, u) in zidx:
        a, b = ctx.edges[e]
        out.var(f"z_{a}_{b}_{v}_{u}")
    for j in range(out.dim):
        out.nonneg(j)

    out.eq({e: ONE for e in range(ctx.num_edges)}, n - 1)
    for e, (v, w) in enumerate(ctx.edges):
        for u in ctx.nodes:
            if u not in (v, w):
                out.eq({e: ONE, zidx[e, v, u]: -ONE, zidx[e, w, u]: -ONE}, 0)
    for v, w in itertools.permutations(ctx.nodes, 2):
        row = {ctx.index(v, w): ONE}
        for u in ctx.nodes:
            if u not in (v, w):
                row[zidx[ctx.index(v, u), u, w]] = ONE
        out.eq(row, 1)
    return out.build(kind="spanning-tree", n=n)


def spanning_tree_section(ctx: CompleteGraphContext, tree: EdgeSubset) -> list[Fraction]:
    """The point of the spanning tree extension representing ``tree``."""
    if tree.ctx != ctx or not is_spanning_tree(tree):
        raise DomainError("section is defined on spanning trees of the given K_n only")
    adj: dict[int, list[int]] = {v: [] for v in ctx.nodes}
    for v, w in tree.pairs():
        adj[v].append(w)
        adj[w].append(v)

    def side(start: int, banned: int) -> set[int]:
        seen, stack = {start}, [start]
        while stack:
            a = stack.pop()
            for b in adj[a]:
                if b not in seen and not (a == start and b == banned):
                    seen.add(b)
                    stack.append(b)
        return seen

    y = tree.vector()
    zidx = _tree_z_index(ctx.n)
    y += [Fraction(0)] * len(zidx)
    for e in tree.edges:
        v, w = ctx.pair(e)
        for a, b in ((v, w), (w, v)):
            for u in side(a, b):
                if u != a:
                    y[zidx[e, a, u]] = ONE
    return y


# -- matchings -------------------------------------------------------------

def matching_block(ctx: CompleteGraphContext, ell: int, phi: Sequence[int]) -> ExtendedFormulation | None:
    """Block for one coloring ``phi`` (values ``1..2*ell``): a perfect
    matching on the color classes with one edge between them, or ``None``
    when some color class is empty."""
    r = 2 * ell
    buckets = [[v for v in ctx.nodes if phi[v - 1] == s] for s in range(1, r + 1)]
    if any(not b for b in buckets):
        return None
    out = FormulationBuilder(ctx.num_edges)
    for e, (v, w) in enumerate(ctx.edges):
        out.var(f"x_{v}_{w}")
        out.project(e, e)
        out.nonneg(e)
        if phi[v - 1] == phi[w - 1]:
            out.eq({e: ONE}, 0)
    for b in buckets:
        out.eq({e: ONE for e in ctx.delta(b)}, 1)
    for size in range(1, r, 2):
        for S in itertools.combinations(range(r), size):
            nodes = [v for s in S for v in buckets[s]]
            out.le({e: -ONE for e in ctx.delta(nodes)}, -1)
    return out.build(kind="matching-block", phi=list(phi))


def build_matching_ef(n: int, ell: int, family: HashFamily) -> ExtendedFormulation:
    """Extension of the convex hull of all matchings of K_n with ``ell``
    edges, as a union of one block per coloring of the family."""
    if not (1 <= ell and 2 * ell <= n):
        raise DomainError(f"need 1 <= ell <= n/2, got n={n}, ell={ell}")
    if family.n != n or family.r != 2 * ell:
        raise DomainError(f"family must map [{n}] -> [{2 * ell}]")
    if not certify(family)[0]:
        raise DomainError("hash family is not perfect")
    ctx = CompleteGraphContext(n)
    blocks, kept = [], []
    for i, phi in enumerate(family.maps):
        blk = matching_block(ctx, ell, phi)
        if blk is not None:
            blocks.append(blk)
            kept.append(i)
    if not blocks:
        raise InfeasibleError("every block of the family is empty")
    return union_extension(blocks, names=[f"m{i}" for i in kept], kind="matching", n=n, ell=ell,
                           maps=family.q)


# -- cycles ----------------------------------------------------------------

Node = Union[str, tuple[frozenset, int]]
SOURCE, SINK = "s", "t"


@dataclass
class DPDigraph:
    """Layered digraph whose source-sink paths are the sequences of
    ``ell-1`` nodes using every color of ``1..ell-1`` once.  Together with
    the node ``v_star`` (color ``ell``) each path closes to a cycle."""

    n: int
    ell: int
    phi: tuple[int, ...]
    v_star: int
    nodes: list[Node] = field(default_factory=list)
    arcs: list[tuple[Node, Node]] = field(default_factory=list)

    def __post_init__(self) -> None:
        colored = [v for v in range(1, self.n + 1) if self.phi[v - 1] < self.ell]
        full = frozenset(range(1, self.ell))
        self.nodes = [SOURCE]
        for size in range(1, self.ell):
            for A in itertools.combinations(range(1, self.ell), size):
                fa = frozenset(A)
                self.nodes += [(fa, v) for v in colored if self.phi[v - 1] in fa]
        self.nodes.append(SINK)
        self.arcs = [(SOURCE, (frozenset({self.phi[v - 1]}), v)) for v in colored]
        for node in self.nodes[1:-1]:
            A, v = node
            for w in colored:
                c = self.phi[w - 1]
                if c not in A:
                    self.arcs.append((node, (A | {c}, w)))
        self.arcs += [((full, v), SINK) for v in colored]

    def edge_of(self, arc: tuple[Node, Node]) -> tuple[int, int]:
        """K_n edge (sorted pair) carried by an arc."""
        tail, head = arc
        if tail == SOURCE:
            v, w = self.v_star, head[1]
        elif head == SINK:
            v, w = tail[1], self.v_star
        else:
            v, w = tail[1], head[1]
        return (v, w) if v < w else (w, v)

    def paths(self) -> Iterator[list[int]]:
        """All source-sink paths as lists of arc positions."""
        out: dict[Node, list[int]] = {}
        for j, (tail, _) in enumerate(self.arcs):
            out.setdefault(tail, []).append(j)

        def walk(node: Node, acc: list[int]) -> Iterator[list[int]]:
            if node == SINK:
                yield list(acc)
                return
            for j in out.get(node, []):
                acc.append(j)
                yield from walk(self.arcs[j][1], acc)
                acc.pop()

        yield from walk(SOURCE, [])


def build_cycle_dp_block(n: int, ell: int, phi: Sequence[int], v_star: int) -> ExtendedFormulation:
    """Unit flow polytope of the DP digraph, mapped to edge space."""
    if ell < 3:
        raise DomainError(f"cycles need ell >= 3, got {ell}")
    if len(phi) != n or not all(1 <= c <= ell for c in phi):
        raise DomainError(f"phi must map [{n}] -> [{ell}]")
    if not (1 <= v_star <= n) or phi[v_star - 1] != ell:
        raise DomainError(f"v*={v_star} must have color {ell}")
    ctx = CompleteGraphContext(n)
    dag = DPDigraph(n, ell, tuple(phi), v_star)
    out = FormulationBuilder(ctx.num_edges)
    balance: dict[Node, dict[int, Fraction]] = {}
    for j, arc in enumerate(dag.arcs):
        out.var(f"f{j}")
        out.nonneg(j)
        out.project(ctx.index(*dag.edge_of(arc)), j)
        tail, head = arc
        balance.setdefault(tail, {})[j] = ONE
        balance.setdefault(head, {})[j] = -ONE
    for node in dag.nodes[1:-1]:
        if node in balance:
            out.eq(balance[node], 0)
    out.eq(balance.get(SOURCE, {}), 1)
    return out.build(kind="cycle-block", phi=list(phi), v_star=v_star, arcs=len(dag.arcs))


def cycle_map_block(n: int, ell: int, phi: Sequence[int]) -> ExtendedFormulation | None:
    """Union over ``v*`` of the DP blocks for one coloring, or ``None``
    when a color class is empty."""
    if any(c not in phi for c in range(1, ell + 1)):
        return None
    stars = [v for v in range(1, n + 1) if phi[v - 1] == ell]
    inner = [build_cycle_dp_block(n, ell, phi, v) for v in stars]
    return union_extension(inner, names=[f"v{v}" for v in stars], kind="cycle-map",
                           phi=list(phi))


def build_cycle_ef(n: int, ell: int, family: HashFamily) -> ExtendedFormulation:
    """Extension of the convex hull of all cycles of length ``ell`` in K_n."""
    if not (3 <= ell <= n):
        raise DomainError(f"need 3 <= ell <= n, got n={n}, ell={ell}")
    if family.n != n or family.r != ell:
        raise DomainError(f"family must map [{n}] -> [{ell}]")
    if not certify(family)[0]:
        raise DomainError("hash family is not perfect")
    blocks, kept = [], []
    for i, phi in enumerate(family.maps):
        blk = cycle_map_block(n, ell, phi)
        if blk is not None:
            blocks.append(blk)
            kept.append(i)
    if not blocks:
        raise InfeasibleError("every block of the family is empty")
    inner = sum(b.meta["blocks"] for b in blocks)
    return union_extension(blocks, names=[f"m{i}" for i in kept], kind="cycle", n=n,
                           ell=ell, maps=family.q, inner_blocks=inner)
