"""Partially resolved strips and the factorization of their total partition function.

Fixing some interior edges of C_{m,n} splits the strip into consecutive
blocks C_{m_k,n_k}. A triangulation refines the partial resolution exactly
when block k, occupying triangle positions s_{k-1}+1 .. s_k, contains m_k
top-based triangles.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from functools import lru_cache
from itertools import combinations, product
from math import comb, prod
from typing import Iterator, Sequence

from .errors import InvalidRange
from .mmalgebra import ExponentMap, cached_total, reduced_partition, sum_reduced
from .strip import (
    EdgePath,
    StripDiagram,
    Triangulation,
    check_enumerable,
    edge_path_list,
    enumerate_triangulations,
)


@dataclass(frozen=True)
class BlockDecomposition:
    diagram: StripDiagram
    blocks: tuple[tuple[int, int], ...]

    def __post_init__(self):
        blocks = tuple((int(a), int(b)) for a, b in self.blocks)
        object.__setattr__(self, "blocks", blocks)
        if not blocks:
            raise InvalidRange("a decomposition needs at least one block")
        for a, b in blocks:
            if a < 0 or b < 0 or a + b < 1:
                raise InvalidRange(f"block ({a}, {b}) must have m_k, n_k >= 0 and m_k + n_k >= 1")
        if sum(a for a, _ in blocks) != self.diagram.m or sum(b for _, b in blocks) != self.diagram.n:
            raise InvalidRange(
                f"blocks {list(blocks)} do not sum to ({self.diagram.m}, {self.diagram.n})"
            )

    @classmethod
    def of(cls, blocks: Sequence[tuple[int, int]]) -> BlockDecomposition:
        return cls(StripDiagram(sum(a for a, _ in blocks), sum(b for _, b in blocks)), tuple(blocks))

    @cached_property
    def boundaries(self) -> list[int]:
        """Cumulative block ends s_1 < ... < s_P = m + n."""
        out, s = [], 0
        for a, b in self.blocks:
            s += a + b
            out.append(s)
        return out

    @cached_property
    def offsets(self) -> list[int]:
        return [0] + self.boundaries[:-1]

    @property
    def fixed_edges(self) -> list[int]:
        """Interior edges already present in the partial resolution."""
        return self.boundaries[:-1]

    @cached_property
    def block_masks(self) -> list[int]:
        """Bitmask of the triangle positions of each block (bit k-1 for t_k)."""
        return [((1 << (hi - lo)) - 1) << lo for lo, hi in zip(self.offsets, self.boundaries)]

    def count(self) -> int:
        return prod(comb(a + b, b) for a, b in self.blocks)

    def to_json(self) -> dict:
        return {"m": self.diagram.m, "n": self.diagram.n, "blocks": [list(b) for b in self.blocks]}

    @classmethod
    def from_json(cls, doc: dict) -> BlockDecomposition:
        return cls(StripDiagram(int(doc["m"]), int(doc["n"])), tuple(tuple(b) for b in doc["blocks"]))


def refines(t: Triangulation, d: BlockDecomposition) -> bool:
    mask = t.mask
    return all(bin(mask & bm).count("1") == a for (a, _), bm in zip(d.blocks, d.block_masks))


def restricted_triangulations(d: BlockDecomposition) -> Iterator[Triangulation]:
    """Triangulations of the full strip that refine ``d``, in lexicographic order."""
    check_enumerable(d.diagram)
    choices = [
        combinations(range(lo + 1, lo + a + b + 1), a) for (a, b), lo in zip(d.blocks, d.offsets)
    ]
    for parts in product(*choices):
        yield Triangulation(d.diagram, tuple(k for part in parts for k in part))


def block_multiplicities(d: BlockDecomposition) -> list[int]:
    sizes = [comb(a + b, b) for a, b in d.blocks]
    return [prod(sizes[:k] + sizes[k + 1:]) for k in range(len(sizes))]


def restricted_total(d: BlockDecomposition) -> ExponentMap:
    return sum_reduced(restricted_triangulations(d), d.diagram)


def block_total(d: BlockDecomposition, k: int) -> ExponentMap:
    """Total partition function of block ``k`` re-indexed into the full strip."""
    a, b = d.blocks[k]
    local = cached_total(a, b)
    return local.shifted(d.diagram, d.offsets[k])


@dataclass(frozen=True)
class Factorization:
    decomposition: BlockDecomposition
    zpp: ExponentMap
    block_factors: list[tuple[ExponentMap, int]]

    def crossing_ok(self) -> bool:
        fixed = self.decomposition.fixed_edges
        return all(any(p.crosses(s) for s in fixed) for p in self.zpp.path_exponents)

    def recombine(self) -> ExponentMap:
        acc = self.zpp
        for block, b in self.block_factors:
            acc = acc + block.scaled(b)
        return acc

    def to_json(self) -> dict:
        return {
            **self.decomposition.to_json(),
            "zpp": self.zpp.to_json(),
            "block_factors": [
                {
                    "block": list(self.decomposition.blocks[k]),
                    "offset": self.decomposition.offsets[k],
                    "multiplicity": str(b),
                    "total": f.to_json(),
                }
                for k, (f, b) in enumerate(self.block_factors)
            ],
        }


def factorize(d: BlockDecomposition) -> Factorization:
    """Split the restricted total into per-block powers and a boundary-crossing remainder."""
    mult = block_multiplicities(d)
    factors = [(block_total(d, k), mult[k]) for k in range(len(d.blocks))]
    zpp = restricted_total(d)
    for f, b in factors:
        zpp = zpp - f.scaled(b)
    return Factorization(d, zpp, factors)


def crossing_paths(d: BlockDecomposition) -> list[EdgePath]:
    fixed = d.fixed_edges
    return [p for p in edge_path_list(d.diagram) if any(p.crosses(s) for s in fixed)]


@lru_cache(maxsize=64)
def _all_reduced(diagram: StripDiagram) -> tuple[tuple[Triangulation, ExponentMap], ...]:
    return tuple((t, reduced_partition(t)) for t in enumerate_triangulations(diagram))


def restricted_total_bruteforce(d: BlockDecomposition) -> ExponentMap:
    """Same as :func:`restricted_total`, but filtering every triangulation of the strip."""
    acc: dict[EdgePath, int] = {}
    for t, z in _all_reduced(d.diagram):
        if refines(t, d):
            for p, e in z.path_exponents.items():
                acc[p] = acc.get(p, 0) + e
    return ExponentMap(d.diagram, acc)
