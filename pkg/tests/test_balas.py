from __future__ import annotations

from fractions import Fraction

import pytest
from _fixtures import SLACK_FIXTURES, box, simplex
from hypothesis import given, settings
from hypothesis import strategies as st

from efforge.balas import recession_is_trivial, union_extension
from efforge.errors import DomainError, InfeasibleError, UnboundedError
from efforge.lp import solve
from efforge.polyhedra import optimize, polytope, random_objectives, unit_objectives, verify_projection_equals

F = Fraction


def point(*coords):
    return polytope([], [({j: 1}, v) for j, v in enumerate(coords)], dim=len(coords))


def shifted_box(lo, hi):
    return polytope([({0: 1}, hi), ({0: -1}, -lo)])


def test_two_points_give_segment():
    u = union_extension([point(0), point(1)])
    assert u.size() == 2
    assert optimize(u, [1]).value == 1 and optimize(u, [-1]).value == 0


def test_two_intervals():
    u = union_extension([shifted_box(0, 1), shifted_box(2, 3)])
    assert u.size() == 6
    assert optimize(u, [1]).value == 3 and optimize(u, [-1]).value == 0


def test_three_points_triangle():
    u = union_extension([point(0, 0), point(1, 0), point(0, 1)])
    assert optimize(u, [1, 1]).value == 1
    assert u.size() == 3 and u.meta["blocks"] == 3


def test_errors():
    with pytest.raises(DomainError):
        union_extension([])
    with pytest.raises(InfeasibleError):
        union_extension([box(1), polytope([({0: 1}, -1), ({0: -1}, 0)])])
    with pytest.raises(UnboundedError):
        union_extension([polytope([({0: -1}, 0)])])
    with pytest.raises(UnboundedError):
        # free variable direction without nonnegativity rows
        union_extension([polytope([({0: 1, 1: 1}, 1), ({0: -1, 1: -1}, 0)])])
    with pytest.raises(DomainError):
        union_extension([box(1), box(2)])


def test_recession_checks():
    assert recession_is_trivial(box(3))
    assert recession_is_trivial(polytope([({0: 1}, 1), ({0: -1}, 1)]))
    assert not recession_is_trivial(polytope([({0: -1}, 0), ({1: -1}, 0)], [({0: 1, 1: -1}, 0)]))


def test_nested_unions_and_size_law():
    inner = union_extension([point(0, 0), point(1, 1)])
    outer = union_extension([inner, box(2)])
    assert outer.size() == inner.size() + 1 + box(2).size() + 1
    assert optimize(outer, [1, 1]).value == 2
    assert optimize(outer, [1, -1]).value == 1


def test_lambda_zero_forces_zero_copy():
    far = polytope([({0: 1}, 3), ({0: -1}, -2), ({1: 1}, 1), ({1: -1}, -1)], dim=2)
    blocks = [box(2), simplex(2), far]
    u = union_extension(blocks)
    lam = [j for j, name in enumerate(u.names) if name.endswith(".lam")]
    start = 0
    for i, blk in enumerate(blocks):
        lp = u.to_lp()
        lp.equations.append(({lam[i]: 1}, 0))
        for j in range(start, start + blk.dim):
            for sign in (1, -1):
                assert solve(lp.with_objective({j: sign})).value == 0
        start += blk.dim + 1


@pytest.mark.parametrize("picks", [(0, 1), (2, 4, 6), (1, 5, 7, 8)])
def test_hull_law_on_fixtures(picks):
    by_dim = {}
    for i in picks:
        name, ef, verts = SLACK_FIXTURES[i]
        by_dim.setdefault(ef.ambient_dim, []).append((ef, verts))
    for m, group in by_dim.items():
        u = union_extension([ef for ef, _ in group])
        verts = [v for _, vs in group for v in vs]
        assert u.size() == sum(ef.size() + 1 for ef, _ in group)
        suite = unit_objectives(m) + random_objectives(m, 15, m)
        assert verify_projection_equals(u, verts, suite).passed


coords = st.integers(-3, 3)


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 3).flatmap(
    lambda m: st.lists(st.lists(st.lists(coords, min_size=m, max_size=m), min_size=1, max_size=3),
                       min_size=1, max_size=4)))
def test_hull_law_random_point_clouds(clouds):
    # each block is the convex hull of a small point set, given as a union of points
    m = len(clouds[0][0])
    blocks, verts = [], []
    for cloud in clouds:
        pts = [point(*p) for p in cloud]
        blocks.append(union_extension(pts) if len(pts) > 1 else pts[0])
        verts += cloud
    u = union_extension(blocks)
    assert u.size() == sum(b.size() + 1 for b in blocks)
    suite = unit_objectives(m) + random_objectives(m, 6, len(verts))
    assert verify_projection_equals(u, verts, suite).passed
