from __future__ import annotations

import itertools

import pytest

from efforge.errors import DomainError, SizeGuardError
from efforge.hashfam import HashFamily, build_family, certify


def covers(phi, W):
    return len({phi[v - 1] for v in W}) == len(W)


def brute_min_q(n, r, limit):
    """Smallest family size covering all r-subsets, by exhaustive search."""
    maps = list(itertools.product(range(1, r + 1), repeat=n))
    subsets = list(itertools.combinations(range(1, n + 1), r))
    for q in range(1, limit + 1):
        for fam in itertools.combinations(maps, q):
            if all(any(covers(phi, W) for phi in fam) for W in subsets):
                return q
    return None


def test_identity_when_n_equals_r():
    fam = build_family(5, 5)
    assert fam.q == 1 and fam.maps == ((1, 2, 3, 4, 5),) and fam.certified
    assert certify(HashFamily(4, 4, ((1, 2, 3, 4),)))[0]


def test_n4_r2_minimum_is_two():
    assert brute_min_q(4, 2, 3) == 2
    fam = build_family(4, 2)
    assert fam.certified and fam.q >= 2
    # the three perfect-matching partitions of {1,2,3,4} also work
    partitions = HashFamily(4, 2, ((1, 1, 2, 2), (1, 2, 1, 2), (1, 2, 2, 1)))
    assert certify(partitions) == (True, None)


def test_n6_r2_and_n6_r4():
    for r in (2, 4):
        fam = build_family(6, r)
        assert certify(fam)[0]
        assert all(any(covers(phi, W) for phi in fam.maps) for W in itertools.combinations(range(1, 7), r))


def test_constant_map_fails_with_witness():
    ok, W = certify(HashFamily(4, 2, ((1, 1, 1, 1),)))
    assert not ok and len(W) == 2


@pytest.mark.parametrize("n", range(1, 11))
def test_every_family_certifies(n):
    for r in range(1, n + 1):
        assert certify(build_family(n, r))[0]


def test_deterministic():
    assert build_family(9, 4).maps == build_family(9, 4).maps
    assert build_family(9, 4).dumps() == build_family(9, 4).dumps()


def test_coverage_strictly_decreases():
    log = []
    fam = build_family(8, 4, log=log)
    assert len(log) == fam.q and log[-1] == 0
    assert all(a > b for a, b in zip(log, log[1:]))


def test_errors():
    with pytest.raises(DomainError):
        build_family(3, 4)
    with pytest.raises(DomainError):
        build_family(3, 0)
    with pytest.raises(SizeGuardError):
        build_family(17, 2)
    with pytest.raises(DomainError):
        HashFamily(3, 2, ((1, 2, 3),))
    with pytest.raises(DomainError):
        HashFamily(3, 2, ())


def test_json_round_trip():
    fam = build_family(7, 3)
    assert HashFamily.from_json(fam.to_json()) == fam


def test_buckets():
    fam = HashFamily(4, 2, ((1, 2, 1, 2),))
    assert fam.bucket(0, 1) == [1, 3] and fam.bucket(0, 2) == [2, 4]
