"""Canonical subset bookkeeping and pointed maps between finite sets.

Subsets of {1..n} are represented as sorted tuples of ints.  The canonical
order on subsets is by (size, lexicographic); every enumeration in the
package iterates subsets in this order so that reports and generated
structures are reproducible.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

Subset = tuple[int, ...]

EMPTY: Subset = ()


def subset_key(s: Subset) -> tuple[int, Subset]:
    return (len(s), s)


@lru_cache(maxsize=None)
def subsets_of(n: int) -> tuple[Subset, ...]:
    """All subsets of {1..n}, smallest first, lexicographic within a size."""
    out = []
    for k in range(n + 1):
        out.extend(itertools.combinations(range(1, n + 1), k))
    return tuple(out)


@lru_cache(maxsize=None)
def nonempty_subsets_of(n: int) -> tuple[Subset, ...]:
    return subsets_of(n)[1:]


def union(s: Subset, t: Subset) -> Subset:
    return tuple(sorted(set(s) | set(t)))


def disjoint(s: Subset, t: Subset) -> bool:
    return not set(s) & set(t)


@lru_cache(maxsize=None)
def disjoint_pairs(n: int, nonempty: bool = True) -> tuple[tuple[Subset, Subset], ...]:
    """Ordered disjoint pairs (s, t); by default both parts nonempty."""
    pool = nonempty_subsets_of(n) if nonempty else subsets_of(n)
    return tuple((s, t) for s in pool for t in pool if disjoint(s, t))


@lru_cache(maxsize=None)
def disjoint_triples(n: int) -> tuple[tuple[Subset, Subset, Subset], ...]:
    """Ordered pairwise-disjoint triples of nonempty subsets of {1..n}."""
    pool = nonempty_subsets_of(n)
    out = []
    for s in pool:
        for t in pool:
            if not disjoint(s, t):
                continue
            for u in pool:
                if disjoint(s, u) and disjoint(t, u):
                    out.append((s, t, u))
    return tuple(out)


@dataclass(frozen=True)
class PointedMap:
    """A basepoint-preserving map m+ -> n+, stored by its images on 1..m.

    ``imgs[i-1]`` is the image of i; 0 denotes the basepoint.
    """

    m: int
    n: int
    imgs: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.imgs) != self.m:
            raise ValueError(f"expected {self.m} images, got {len(self.imgs)}")
        for v in self.imgs:
            if not 0 <= v <= self.n:
                raise ValueError(f"image {v} outside 0..{self.n}")

    def __call__(self, i: int) -> int:
        if i == 0:
            return 0
        return self.imgs[i - 1]

    @property
    def is_identity(self) -> bool:
        return self.m == self.n and self.imgs == tuple(range(1, self.m + 1))

    def preimage(self, s: Subset) -> Subset:
        """Preimage of a subset of {1..n}; never contains the basepoint."""
        sl = set(s)
        return tuple(i for i in range(1, self.m + 1) if self.imgs[i - 1] in sl)

    def then(self, psi: "PointedMap") -> "PointedMap":
        """The composite 'self followed by psi'."""
        if psi.m != self.n:
            raise ValueError("pointed maps not composable")
        return PointedMap(self.m, psi.n, tuple(psi(v) for v in self.imgs))


def pointed_identity(m: int) -> PointedMap:
    return PointedMap(m, m, tuple(range(1, m + 1)))


@lru_cache(maxsize=None)
def all_pointed_maps(m: int, n: int) -> tuple[PointedMap, ...]:
    """Every pointed map m+ -> n+, ordered lexicographically by image tuple."""
    return tuple(
        PointedMap(m, n, imgs)
        for imgs in itertools.product(range(0, n + 1), repeat=m)
    )


def segal_injection(k: int, n: int) -> PointedMap:
    """The map n+ -> 1+ sending only k to the non-basepoint element."""
    return PointedMap(n, 1, tuple(1 if i == k else 0 for i in range(1, n + 1)))


def fold_map(n: int) -> PointedMap:
    """The map n+ -> 1+ sending every non-basepoint element to 1."""
    return PointedMap(n, 1, (1,) * n)
