"""Toric strip C_{m,n}: triangulations as top-triangle subsets, edge types, edge paths.

A maximal triangulation of the height-one strip with ``m`` top and ``n``
bottom unit segments has ``m + n`` triangles, ordered left to right. It is
fixed by the set ``T`` of positions whose triangle has its base on the top
row, so triangulations are exactly the ``m``-subsets of ``{1, ..., m+n}``.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from math import comb
from typing import Iterator, NamedTuple

from .errors import EnumerationRangeExceeded, InvalidRange

MAX_ENUM_BITS_ENV = "CONIFOLD_DT_MAX_ENUM_BITS"
DEFAULT_MAX_ENUM_BITS = 63


def max_enum_bits() -> int:
    raw = os.environ.get(MAX_ENUM_BITS_ENV)
    return DEFAULT_MAX_ENUM_BITS if raw is None else int(raw)


@dataclass(frozen=True)
class StripDiagram:
    m: int
    n: int

    def __post_init__(self):
        if not (isinstance(self.m, int) and isinstance(self.n, int)):
            raise InvalidRange(f"m and n must be integers, got {self.m!r}, {self.n!r}")
        if self.m < 0 or self.n < 0 or self.m + self.n < 1:
            raise InvalidRange(f"need m >= 0, n >= 0, m + n >= 1; got ({self.m}, {self.n})")

    @property
    def size(self) -> int:
        return self.m + self.n

    @property
    def faces(self) -> int:
        return self.m + self.n

    @property
    def interior_edges(self) -> int:
        return self.m + self.n - 1

    @property
    def euler_char(self) -> int:
        return self.m + self.n

    @property
    def triangulation_count(self) -> int:
        return comb(self.m + self.n, self.m)

    def to_json(self) -> dict:
        return {"m": self.m, "n": self.n}


class EdgePath(NamedTuple):
    """Contiguous run of interior edges ``e_i, ..., e_j`` (1-based, inclusive)."""

    i: int
    j: int

    @property
    def length(self) -> int:
        return self.j - self.i + 1

    def crosses(self, edge: int) -> bool:
        return self.i <= edge <= self.j


@dataclass(frozen=True)
class Triangulation:
    diagram: StripDiagram
    top_set: tuple[int, ...]

    def __post_init__(self):
        top = tuple(sorted(set(self.top_set)))
        object.__setattr__(self, "top_set", top)
        d = self.diagram
        if len(top) != d.m:
            raise InvalidRange(f"top_set must have exactly m={d.m} elements, got {list(top)}")
        if top and (top[0] < 1 or top[-1] > d.size):
            raise InvalidRange(f"top_set elements must lie in [1, {d.size}], got {list(top)}")

    @cached_property
    def mask(self) -> int:
        # bit k-1 set iff triangle t_k is top-based
        bits = 0
        for k in self.top_set:
            bits |= 1 << (k - 1)
        return bits

    def is_top(self, k: int) -> bool:
        return bool(self.mask >> (k - 1) & 1)

    def edge_types(self) -> list[int]:
        return [edge_type(self, i) for i in range(1, self.diagram.interior_edges + 1)]

    def complement(self) -> Triangulation:
        """The triangulation of C_{n,m} obtained by swapping top and bottom rows."""
        d = self.diagram
        rest = tuple(k for k in range(1, d.size + 1) if k not in self.top_set)
        return Triangulation(StripDiagram(d.n, d.m), rest)

    def to_json(self) -> dict:
        return {"m": self.diagram.m, "n": self.diagram.n, "top_set": list(self.top_set)}

    @classmethod
    def from_json(cls, doc: dict) -> Triangulation:
        return cls(StripDiagram(int(doc["m"]), int(doc["n"])), tuple(doc["top_set"]))


def counts(diagram: StripDiagram) -> tuple[int, int, int, int]:
    """Return ``(faces, interior_edges, triangulation_count, euler_char)``."""
    return diagram.faces, diagram.interior_edges, diagram.triangulation_count, diagram.euler_char


def check_enumerable(diagram: StripDiagram) -> None:
    limit = max_enum_bits()
    if diagram.size > limit:
        raise EnumerationRangeExceeded(
            f"enumeration-range-exceeded: m+n={diagram.size} exceeds the {limit}-bit limit"
        )


def unrank_subset(size: int, k: int, rank: int) -> tuple[int, ...]:
    """The ``rank``-th (0-based) ``k``-subset of ``{1..size}`` in lexicographic order."""
    total = comb(size, k)
    if not 0 <= rank < total:
        raise InvalidRange(f"rank {rank} outside [0, {total})")
    out = []
    x = 1
    for slots in range(k, 0, -1):
        # skip leading elements while the block of subsets starting at x lies below rank
        while True:
            block = comb(size - x, slots - 1)
            if rank < block:
                break
            rank -= block
            x += 1
        out.append(x)
        x += 1
    return tuple(out)


def _iter_subsets(size: int, k: int, start: int, stop: int) -> Iterator[tuple[int, ...]]:
    if start >= stop:
        return
    cur = list(unrank_subset(size, k, start))
    for _ in range(stop - start):
        yield tuple(cur)
        # lexicographic successor
        i = k - 1
        while i >= 0 and cur[i] == size - k + i + 1:
            i -= 1
        if i < 0:
            return
        cur[i] += 1
        for t in range(i + 1, k):
            cur[t] = cur[t - 1] + 1


def enumerate_triangulations(
    diagram: StripDiagram, start: int = 0, stop: int | None = None
) -> Iterator[Triangulation]:
    """Yield every triangulation once, in lexicographic order of ``top_set``.

    ``start``/``stop`` select a slice of that order by rank, so disjoint
    ranges can be consumed by separate workers.
    """
    check_enumerable(diagram)
    total = diagram.triangulation_count
    stop = total if stop is None else min(stop, total)
    if start < 0:
        raise InvalidRange("start must be non-negative")
    if diagram.m == 0:
        subsets: Iterator[tuple[int, ...]] = iter([()] if start < stop else [])
    elif start == 0 and stop == total:
        subsets = combinations(range(1, diagram.size + 1), diagram.m)
    else:
        subsets = _iter_subsets(diagram.size, diagram.m, start, stop)
    return (Triangulation(diagram, t) for t in subsets)


def edge_type(t: Triangulation, i: int) -> int:
    """+1 for an O(-2,0) edge (neighbours on the same row), -1 for O(-1,-1)."""
    if not 1 <= i <= t.diagram.interior_edges:
        raise InvalidRange(f"edge index {i} outside [1, {t.diagram.interior_edges}]")
    return 1 if t.is_top(i) == t.is_top(i + 1) else -1


def edge_path_list(diagram: StripDiagram) -> list[EdgePath]:
    ne = diagram.interior_edges
    return [EdgePath(i, j) for i in range(1, ne + 1) for j in range(i, ne + 1)]
