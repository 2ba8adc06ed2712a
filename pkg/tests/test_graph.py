from __future__ import annotations

import itertools
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from efforge.errors import DomainError, SizeGuardError
from efforge.graph import (
    CompleteGraphContext,
    brute_force_optimum,
    enumerate_cycles,
    enumerate_matchings,
    enumerate_spanning_trees,
    is_spanning_tree,
)


@pytest.mark.parametrize("n", range(1, 9))
def test_edge_indexing_is_lexicographic_and_round_trips(n):
    ctx = CompleteGraphContext(n)
    assert ctx.num_edges == n * (n - 1) // 2
    assert list(ctx.edges) == sorted(ctx.edges)
    for e, (v, w) in enumerate(ctx.edges):
        assert ctx.index(v, w) == ctx.index(w, v) == e
        assert ctx.pair(e) == (v, w)


def test_bad_indices_rejected():
    ctx = CompleteGraphContext(4)
    with pytest.raises(DomainError):
        ctx.index(2, 2)
    with pytest.raises(DomainError):
        ctx.index(0, 1)
    with pytest.raises(DomainError):
        ctx.pair(6)
    with pytest.raises(DomainError):
        ctx.subset([6])
    with pytest.raises(DomainError):
        CompleteGraphContext(0)


@pytest.mark.parametrize("n,ell,count", [(4, 2, 3), (5, 0, 1), (6, 3, 15)])
def test_matching_counts(n, ell, count):
    assert len(enumerate_matchings(CompleteGraphContext(n), ell)) == count


@pytest.mark.parametrize("n,ell,count", [(4, 3, 4), (4, 4, 3), (3, 3, 1)])
def test_cycle_counts(n, ell, count):
    assert len(enumerate_cycles(CompleteGraphContext(n), ell)) == count


@pytest.mark.parametrize("n,count", [(3, 3), (4, 16), (2, 1)])
def test_tree_counts(n, count):
    assert len(enumerate_spanning_trees(CompleteGraphContext(n))) == count


@pytest.mark.parametrize("n", range(1, 9))
def test_matching_count_closed_form(n):
    ctx = CompleteGraphContext(n)
    for ell in range(n // 2 + 1):
        ms = enumerate_matchings(ctx, ell)
        expect = math.factorial(n) // (math.factorial(ell) * 2 ** ell * math.factorial(n - 2 * ell))
        assert len(ms) == expect
        assert len(set(ms)) == len(ms)
        for m in ms:
            assert len(m) == ell and len(m.nodes()) == 2 * ell


@pytest.mark.parametrize("n", range(3, 7))
def test_cycles_are_two_regular(n):
    ctx = CompleteGraphContext(n)
    for ell in range(3, n + 1):
        cycles = enumerate_cycles(ctx, ell)
        assert len(cycles) == math.comb(n, ell) * math.factorial(ell - 1) // 2
        assert len(set(cycles)) == len(cycles)
        for c in cycles:
            deg = {}
            for v, w in c.pairs():
                deg[v] = deg.get(v, 0) + 1
                deg[w] = deg.get(w, 0) + 1
            assert len(deg) == ell and set(deg.values()) == {2}
            # connected: walk around from one node
            start = next(iter(deg))
            seen, frontier = {start}, [start]
            while frontier:
                a = frontier.pop()
                for v, w in c.pairs():
                    for x, y in ((v, w), (w, v)):
                        if x == a and y not in seen:
                            seen.add(y)
                            frontier.append(y)
            assert len(seen) == ell


@pytest.mark.parametrize("n", range(1, 7))
def test_trees_are_distinct_spanning_trees(n):
    ctx = CompleteGraphContext(n)
    trees = enumerate_spanning_trees(ctx)
    assert len(trees) == max(1, n ** (n - 2)) and len(set(trees)) == len(trees)
    assert all(is_spanning_tree(t) for t in trees)
    # independent oracle: every (n-1)-edge subset that is a tree appears
    brute = [s for s in itertools.combinations(range(ctx.num_edges), n - 1) if is_spanning_tree(ctx.subset(s))]
    assert {t.edges for t in trees} == {frozenset(s) for s in brute}


def test_enumeration_domain_and_guards():
    with pytest.raises(DomainError):
        enumerate_matchings(CompleteGraphContext(4), 3)
    with pytest.raises(DomainError):
        enumerate_cycles(CompleteGraphContext(4), 2)
    with pytest.raises(DomainError):
        enumerate_cycles(CompleteGraphContext(4), 5)
    with pytest.raises(SizeGuardError):
        enumerate_matchings(CompleteGraphContext(17), 1)
    with pytest.raises(DomainError):
        brute_force_optimum([], [])


def test_brute_force_examples():
    k4 = CompleteGraphContext(4)
    ones = [Fraction(1)] * 6
    assert brute_force_optimum(enumerate_matchings(k4, 2), ones)[0] == 2
    tri = enumerate_cycles(k4, 3)
    assert brute_force_optimum(tri, tri[1].vector()) == (3, tri[1])
    assert brute_force_optimum(enumerate_spanning_trees(k4), ones)[0] == 3


def test_brute_force_ties_go_to_first():
    ms = enumerate_matchings(CompleteGraphContext(4), 2)
    assert brute_force_optimum(ms, [Fraction(0)] * 6)[1] == ms[0]


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_brute_force_value_invariant_under_permutation(data):
    ctx = CompleteGraphContext(5)
    fam = enumerate_matchings(ctx, 2)
    w = data.draw(st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=7), min_size=10, max_size=10))
    perm = data.draw(st.permutations(fam))
    assert brute_force_optimum(perm, w)[0] == brute_force_optimum(fam, w)[0]
