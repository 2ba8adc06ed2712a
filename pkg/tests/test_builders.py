from __future__ import annotations

import itertools
import random
from fractions import Fraction

import pytest

from efforge.builders import (
    SINK,
    SOURCE,
    DPDigraph,
    build_cycle_dp_block,
    build_cycle_ef,
    build_matching_ef,
    build_spanning_tree_ef,
    cycle_map_block,
    matching_block,
    spanning_tree_section,
)
from efforge.errors import DomainError
from efforge.graph import (
    CompleteGraphContext,
    brute_force_optimum,
    enumerate_cycles,
    enumerate_matchings,
    enumerate_spanning_trees,
)
from efforge.hashfam import HashFamily, build_family
from efforge.polyhedra import contains_in_fiber, optimize, random_objectives, verify_projection_equals

F = Fraction


# -- spanning trees ----------------------------------------------------------

def test_spanning_tree_counts_n4():
    ef = build_spanning_tree_ef(4)
    assert (ef.size(), ef.dim, len(ef.equations)) == (30, 30, 25)
    assert sum(1 for name in ef.names if name.startswith("z_")) == 24


@pytest.mark.parametrize("n", range(2, 8))
def test_spanning_tree_counts_general(n):
    ef = build_spanning_tree_ef(n)
    m = n * (n - 1) // 2
    z = n * (n - 1) * (n - 2)
    assert ef.dim == ef.size() == m + z
    assert len(ef.equations) == 1 + m * (n - 2) + n * (n - 1)
    assert all(c.is_nonnegativity() for c in ef.inequalities)


def test_spanning_tree_n3_all_ones():
    assert optimize(build_spanning_tree_ef(3), [1, 1, 1]).value == 2


def test_section_examples():
    ctx = CompleteGraphContext(3)
    ef = build_spanning_tree_ef(3)
    tree = ctx.subset_from_pairs([(1, 2), (2, 3)])
    y = spanning_tree_section(ctx, tree)
    val = dict(zip(ef.names, y))
    assert val["z_1_2_2_3"] == 1 and val["z_1_2_1_3"] == 0
    assert val["x_1_3"] + val["z_1_2_2_3"] == 1


@pytest.mark.parametrize("n", range(2, 7))
def test_section_feasible_for_every_tree(n):
    ctx = CompleteGraphContext(n)
    ef = build_spanning_tree_ef(n)
    for tree in enumerate_spanning_trees(ctx):
        y = spanning_tree_section(ctx, tree)
        assert not ef.violations(y)
        assert ef.project(y) == tree.vector()


def test_section_rejects_non_trees():
    ctx = CompleteGraphContext(4)
    with pytest.raises(DomainError):
        spanning_tree_section(ctx, ctx.subset_from_pairs([(1, 2), (2, 3), (1, 3)]))
    with pytest.raises(DomainError):
        build_spanning_tree_ef(1)


@pytest.mark.parametrize("n", [3, 4, 5])
def test_spanning_tree_optimize_matches_brute_force(n):
    ctx = CompleteGraphContext(n)
    ef = build_spanning_tree_ef(n)
    trees = enumerate_spanning_trees(ctx)
    for c in random_objectives(ctx.num_edges, 50, 100 + n):
        assert optimize(ef, c).value == brute_force_optimum(trees, c)[0]


# -- matchings ---------------------------------------------------------------

def test_matching_l1_n3():
    fam = build_family(3, 2)
    assert optimize(build_matching_ef(3, 1, fam), [1, 1, 1]).value == 1


def test_matching_l2_n4_projection():
    ctx = CompleteGraphContext(4)
    ef = build_matching_ef(4, 2, build_family(4, 4))
    pms = [m.vector() for m in enumerate_matchings(ctx, 2)]
    assert verify_projection_equals(ef, pms, random_objectives(6, 30, 2)).passed


def test_matching_l2_n5_each_matching_scores_two():
    ctx = CompleteGraphContext(5)
    ef = build_matching_ef(5, 2, build_family(5, 4))
    for m in enumerate_matchings(ctx, 2):
        assert optimize(ef, m.vector()).value == 2


def bijective_on(phi, nodes):
    return len({phi[v - 1] for v in nodes}) == len(nodes)


@pytest.mark.parametrize("n,ell", [(n, ell) for n in range(2, 7) for ell in range(1, 4) if 2 * ell <= n])
def test_matching_block_membership(n, ell):
    ctx = CompleteGraphContext(n)
    rng = random.Random(n * 10 + ell)
    maps = list(build_family(n, 2 * ell).maps)
    maps += [tuple(rng.randint(1, 2 * ell) for _ in range(n)) for _ in range(6)]
    for phi in maps:
        blk = matching_block(ctx, ell, phi)
        if blk is None:
            assert len(set(phi)) < 2 * ell
            continue
        for m in enumerate_matchings(ctx, ell):
            assert (not blk.violations(m.vector())) == bijective_on(phi, m.nodes())


@pytest.mark.parametrize("n,ell", [(4, 1), (5, 2), (6, 2), (6, 3), (7, 3)])
def test_matching_size_accounting(n, ell):
    fam = build_family(n, 2 * ell)
    ef = build_matching_ef(n, ell, fam)
    surviving = [phi for phi in fam.maps if len(set(phi)) == 2 * ell]
    per_block = n * (n - 1) // 2 + 2 ** (2 * ell - 1)
    assert ef.blocks == len(surviving)
    assert ef.size() == len(surviving) * (per_block + 1)


def test_matching_empty_buckets_dropped():
    # second map leaves color 4 unused
    fam = HashFamily(4, 4, ((1, 2, 3, 4), (1, 1, 2, 3)))
    ef = build_matching_ef(4, 2, fam)
    assert ef.blocks == 1


def test_matching_errors():
    with pytest.raises(DomainError):
        build_matching_ef(4, 2, HashFamily(4, 4, ((1, 1, 2, 3),)))
    with pytest.raises(DomainError):
        build_matching_ef(4, 3, build_family(4, 4))
    with pytest.raises(DomainError):
        build_matching_ef(5, 2, build_family(4, 4))


# -- cycles ------------------------------------------------------------------

def test_dp_triangle_identity():
    ef = build_cycle_dp_block(3, 3, (1, 2, 3), 3)
    dag = DPDigraph(3, 3, (1, 2, 3), 3)
    paths = list(dag.paths())
    assert len(paths) == 2 and all(len(p) == 3 for p in paths)
    for c in ([1, 0, 0], [0, 1, 0], [0, 0, 1], [-1, 0, 0], [0, -1, 0], [0, 0, -1]):
        assert optimize(ef, c).value == sum(c)


def test_dp_block_contains_triangles_through_v_star():
    ctx = CompleteGraphContext(4)
    phi = (1, 2, 3, 2)
    ef = build_cycle_dp_block(4, 3, phi, 3)
    for tri in enumerate_cycles(ctx, 3):
        nodes = tri.nodes()
        colorful = 3 in nodes and bijective_on(phi, nodes)
        assert contains_in_fiber(ef, tri.vector()) == colorful


def test_dp_arc_counts_l4_n4():
    dag = DPDigraph(4, 4, (1, 2, 3, 4), 4)
    s_arcs = [a for a in dag.arcs if a[0] == SOURCE]
    t_arcs = [a for a in dag.arcs if a[1] == SINK]
    internal = [a for a in dag.arcs if a[0] != SOURCE and a[1] != SINK]
    assert len(s_arcs) == 3 and len(t_arcs) == 3
    levels = {}
    for (A, _), _ in internal:
        levels[len(A)] = levels.get(len(A), 0) + 1
    assert levels == {1: 6, 2: 6}


def all_maps(n, ell, v_star):
    for phi in itertools.product(range(1, ell + 1), repeat=n):
        if phi[v_star - 1] == ell:
            yield phi


@pytest.mark.parametrize("n,ell", [(3, 3), (4, 3), (4, 4), (5, 3), (5, 4)])
def test_dp_paths_correspond_to_cycles(n, ell):
    ctx = CompleteGraphContext(n)
    cycles = enumerate_cycles(ctx, ell)
    maps = list(all_maps(n, ell, 1))
    if len(maps) > 150:
        maps = random.Random(n + ell).sample(maps, 150)
    for phi in maps:
        dag = DPDigraph(n, ell, phi, 1)
        # structural invariants
        for tail, head in dag.arcs:
            if tail != SOURCE and head != SINK:
                assert len(head[0]) == len(tail[0]) + 1 and tail[0] < head[0]
        hits = {}
        for path in dag.paths():
            assert len(path) == ell
            edges = [ctx.index(*dag.edge_of(dag.arcs[j])) for j in path]
            key = frozenset(edges)
            assert len(key) == ell
            hits[key] = hits.get(key, 0) + 1
        for cyc in cycles:
            expect = 2 if 1 in cyc.nodes() and bijective_on(phi, cyc.nodes()) else 0
            assert hits.get(cyc.edges, 0) == expect
        assert sum(hits.values()) == 2 * sum(1 for c in cycles if c.edges in hits)


def test_dp_block_errors():
    with pytest.raises(DomainError):
        build_cycle_dp_block(4, 3, (1, 2, 3, 1), 1)
    with pytest.raises(DomainError):
        build_cycle_dp_block(4, 2, (1, 2, 2, 1), 2)
    with pytest.raises(DomainError):
        build_cycle_dp_block(4, 3, (1, 2, 3), 3)


def test_cycle_map_block_drops_missing_colors():
    assert cycle_map_block(4, 3, (1, 1, 3, 3)) is None
    assert cycle_map_block(4, 3, (1, 2, 3, 3)).meta["blocks"] == 2


def test_cycle_l3_n4_projection():
    ctx = CompleteGraphContext(4)
    ef = build_cycle_ef(4, 3, build_family(4, 3))
    tris = [c.vector() for c in enumerate_cycles(ctx, 3)]
    assert verify_projection_equals(ef, tris, random_objectives(6, 30, 3)).passed


def test_cycle_l4_n5_unit_weights():
    assert optimize(build_cycle_ef(5, 4, build_family(5, 4)), [1] * 10).value == 4


def test_cycle_tsp_five_cities():
    ctx = CompleteGraphContext(5)
    ef = build_cycle_ef(5, 5, build_family(5, 5))
    tours = enumerate_cycles(ctx, 5)
    assert len(tours) == 12
    for c in random_objectives(10, 20, 55):
        assert optimize(ef, c).value == brute_force_optimum(tours, c)[0]


def test_cycle_size_law():
    fam = build_family(5, 4)
    ef = build_cycle_ef(5, 4, fam)
    total = 0
    for phi in fam.maps:
        blk = cycle_map_block(5, 4, phi)
        if blk is not None:
            inner = [build_cycle_dp_block(5, 4, phi, v) for v in range(1, 6) if phi[v - 1] == 4]
            assert blk.size() == sum(b.size() + 1 for b in inner)
            total += blk.size() + 1
    assert ef.size() == total


def test_cycle_errors():
    with pytest.raises(DomainError):
        build_cycle_ef(4, 2, build_family(4, 2))
    with pytest.raises(DomainError):
        build_cycle_ef(4, 3, HashFamily(4, 3, ((1, 1, 2, 3),)))
