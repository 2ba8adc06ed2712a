"""Perfect hash families: maps [n] -> [r] such that every r-subset of [n]
is mapped bijectively onto [r] by at least one member.

Maps are stored as length-n tuples with values in ``1..r``; entry ``v-1``
is the color of node ``v``.
"""

from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass
from typing import Any, Sequence

from .errors import DomainError, SizeGuardError

MAX_NODES = 16
DEFAULT_SEED = 20100614
#: Candidate maps drawn per greedy round.
CANDIDATES = 48


@dataclass(frozen=True)
class HashFamily:
    n: int
    r: int
    maps: tuple[tuple[int, ...], ...]
    certified: bool = False

    def __post_init__(self) -> None:
        if not self.maps:
            raise DomainError("a hash family needs at least one map")
        for phi in self.maps:
            if len(phi) != self.n or not all(1 <= c <= self.r for c in phi):
                raise DomainError(f"map {phi} is not a function [{self.n}] -> [{self.r}]")

    @property
    def q(self) -> int:
        return len(self.maps)

    def bucket(self, i: int, color: int) -> list[int]:
        """Nodes (1-based) that map ``i`` sends to ``color``."""
        return [v + 1 for v, c in enumerate(self.maps[i]) if c == color]

    def to_json(self) -> dict[str, Any]:
        return {"n": self.n, "r": self.r, "maps": [list(m) for m in self.maps], "certified": self.certified}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), separators=(",", ":")) + "\n"

    @classmethod
    def from_json(cls, data: dict[str, Any]) -> "HashFamily":
        return cls(int(data["n"]), int(data["r"]), tuple(tuple(int(c) for c in m) for m in data["maps"]),
                   bool(data.get("certified", False)))


def _subset_masks(n: int, r: int) -> list[int]:
    return [sum(1 << v for v in W) for W in itertools.combinations(range(n), r)]


def _covered(phi: Sequence[int], masks: list[int], r: int) -> set[int]:
    full = (1 << r) - 1
    out = set()
    for mask in masks:
        colors = 0
        v, m = 0, mask
        while m:
            if m & 1:
                colors |= 1 << (phi[v] - 1)
            m >>= 1
            v += 1
        if colors == full:
            out.add(mask)
    return out


def certify(family: HashFamily) -> tuple[bool, tuple[int, ...] | None]:
    """Exhaustive check over all r-subsets; returns a failing subset
    (1-based nodes) when some subset is split by no map."""
    if family.r > family.n:
        return False, None
    masks = _subset_masks(family.n, family.r)
    remaining = set(masks)
    for phi in family.maps:
        remaining -= _covered(phi, list(remaining), family.r)
        if not remaining:
            return True, None
    bad = min(remaining)
    return False, tuple(v + 1 for v in range(family.n) if bad >> v & 1)


def build_family(n: int, r: int, seed: int = DEFAULT_SEED, log: list[int] | None = None) -> HashFamily:
    """Certified family built greedily from seeded random candidates.

    Each round draws :data:`CANDIDATES` maps, each made bijective on one
    still-uncovered subset and random elsewhere, and keeps the candidate
    covering the most uncovered subsets (lowest draw index on ties).  When
    ``log`` is given, the uncovered count after every accepted map is
    appended to it.
    """
    if not (1 <= r <= n):
        raise DomainError(f"need 1 <= r <= n, got n={n}, r={r}")
    if n > MAX_NODES:
        raise SizeGuardError(f"hash family construction refused for n={n} > {MAX_NODES}")
    if r == n:
        fam = HashFamily(n, r, (tuple(range(1, n + 1)),))
    else:
        rng = random.Random(seed * 1_000_003 + n * 101 + r)
        uncovered = set(_subset_masks(n, r))
        maps: list[tuple[int, ...]] = []
        while uncovered:
            pool = sorted(uncovered)
            best, best_cov = None, set()
            for _ in range(CANDIDATES):
                W = pool[rng.randrange(len(pool))]
                colors = list(range(1, r + 1))
                rng.shuffle(colors)
                phi = [0] * n
                it = iter(colors)
                for v in range(n):
                    phi[v] = next(it) if W >> v & 1 else rng.randint(1, r)
                cov = _covered(phi, pool, r)
                if len(cov) > len(best_cov):
                    best, best_cov = tuple(phi), cov
            maps.append(best)
            uncovered -= best_cov
            if log is not None:
                log.append(len(uncovered))
        fam = HashFamily(n, r, tuple(maps))
    ok, _ = certify(fam)
    if not ok:  # pragma: no cover - the greedy loop only stops when all are covered
        raise AssertionError("greedy construction produced an uncertified family")
    return HashFamily(fam.n, fam.r, fam.maps, certified=True)
