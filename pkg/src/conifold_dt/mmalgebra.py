"""Partition functions as exponent vectors over MacMahon factors.

A product ``M(1,q)^a * prod_P M(Q_P, q)^{e_P}`` over edge paths ``P`` is
stored as the sparse map ``P -> e_P`` together with ``a``. Multiplying
partition functions is then componentwise addition of exponents.
"""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Iterable, Mapping

from .errors import InvalidRange, UndefinedDegree
from .strip import (
    EdgePath,
    StripDiagram,
    Triangulation,
    check_enumerable,
    edge_path_list,
    enumerate_triangulations,
)


def binom(a: int, b: int) -> int:
    """C(a, b), zero outside ``0 <= b <= a``."""
    if b < 0 or a < 0 or b > a:
        return 0
    return comb(a, b)


@dataclass(frozen=True)
class ExponentMap:
    diagram: StripDiagram
    path_exponents: Mapping[EdgePath, int] = field(default_factory=dict)
    m1_power: Fraction = Fraction(0)

    def __post_init__(self):
        ne = self.diagram.interior_edges
        clean = {}
        for key, e in self.path_exponents.items():
            if not e:
                continue
            p = key if type(key) is EdgePath else EdgePath(*key)
            if not 1 <= p.i <= p.j <= ne:
                raise InvalidRange(f"edge path {tuple(p)} invalid for N_E={ne}")
            clean[p] = clean.get(p, 0) + int(e)
        clean = {p: clean[p] for p in sorted(clean) if clean[p]}
        object.__setattr__(self, "path_exponents", clean)
        m1 = self.m1_power if type(self.m1_power) is Fraction else Fraction(self.m1_power)
        if (2 * m1).denominator != 1:
            raise InvalidRange(f"m1_power must be a multiple of 1/2, got {m1}")
        object.__setattr__(self, "m1_power", m1)

    @classmethod
    def _trusted(cls, diagram: StripDiagram, exps: dict, m1: Fraction) -> ExponentMap:
        # inputs already keyed by valid EdgePaths; only drop zeros and sort
        obj = object.__new__(cls)
        object.__setattr__(obj, "diagram", diagram)
        object.__setattr__(obj, "path_exponents", {p: exps[p] for p in sorted(exps) if exps[p]})
        object.__setattr__(obj, "m1_power", m1)
        return obj

    def __getitem__(self, path) -> int:
        return self.path_exponents.get(EdgePath(*path), 0)

    def _check_same(self, other: ExponentMap) -> None:
        if self.diagram != other.diagram:
            raise InvalidRange(f"diagram mismatch: {self.diagram} vs {other.diagram}")

    def __add__(self, other: ExponentMap) -> ExponentMap:
        self._check_same(other)
        merged = dict(self.path_exponents)
        for p, e in other.path_exponents.items():
            merged[p] = merged.get(p, 0) + e
        return ExponentMap._trusted(self.diagram, merged, self.m1_power + other.m1_power)

    def __neg__(self) -> ExponentMap:
        return self.scaled(-1)

    def __sub__(self, other: ExponentMap) -> ExponentMap:
        return self + (-other)

    def scaled(self, k: int) -> ExponentMap:
        """Exponent map of the ``k``-th power."""
        return ExponentMap._trusted(
            self.diagram, {p: k * e for p, e in self.path_exponents.items()}, k * self.m1_power
        )

    def shifted(self, diagram: StripDiagram, offset: int) -> ExponentMap:
        """Re-index every path by ``offset`` inside the larger ``diagram``."""
        return ExponentMap(
            diagram,
            {EdgePath(p.i + offset, p.j + offset): e for p, e in self.path_exponents.items()},
            self.m1_power,
        )

    def is_empty(self) -> bool:
        return not self.path_exponents and self.m1_power == 0

    def to_json(self) -> dict:
        return {
            "m": self.diagram.m,
            "n": self.diagram.n,
            "m1_power_times_2": int(2 * self.m1_power),
            "factors": [
                {"path": [p.i, p.j], "exp": str(e)} for p, e in self.path_exponents.items()
            ],
        }

    @classmethod
    def from_json(cls, doc: dict) -> ExponentMap:
        return cls(
            StripDiagram(int(doc["m"]), int(doc["n"])),
            {EdgePath(*f["path"]): int(f["exp"]) for f in doc["factors"]},
            Fraction(int(doc["m1_power_times_2"]), 2),
        )

    def to_text(self) -> str:
        parts = []
        if self.m1_power:
            parts.append(f"M(1,q)^{_fmt_frac(self.m1_power)}")
        for p, e in self.path_exponents.items():
            arg = "".join(f"Q_{k}" for k in range(p.i, p.j + 1))
            parts.append(f"M({arg},q)^{e}")
        return " ".join(parts) if parts else "1"


def _fmt_frac(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class HomogeneityReport:
    is_homogeneous: bool
    degree: int | None = None
    witness: tuple[EdgePath, EdgePath] | None = None

    def to_json(self) -> dict:
        return {
            "homogeneous": self.is_homogeneous,
            "degree": None if self.degree is None else str(self.degree),
            "witness": None if self.witness is None else [list(p) for p in self.witness],
        }


def _path_signs(types: list[int]) -> dict[EdgePath, int]:
    ne = len(types)
    out = {}
    for i in range(1, ne + 1):
        sign = 1
        for j in range(i, ne + 1):
            sign *= types[j - 1]
            out[EdgePath(i, j)] = sign
    return out


def reduced_partition(t: Triangulation) -> ExponentMap:
    """Exponent of ``M(Q_ij, q)`` is the product of the edge types along the path."""
    return ExponentMap(t.diagram, _path_signs(t.edge_types()))


def _sum_range(diagram: StripDiagram, start: int, stop: int) -> dict[EdgePath, int]:
    acc: dict[EdgePath, int] = {}
    for t in enumerate_triangulations(diagram, start, stop):
        for p, e in _path_signs(t.edge_types()).items():
            acc[p] = acc.get(p, 0) + e
    return acc


def _sum_range_job(args):
    m, n, start, stop = args
    return _sum_range(StripDiagram(m, n), start, stop)


def sum_reduced(triangulations: Iterable[Triangulation], diagram: StripDiagram) -> ExponentMap:
    acc: dict[EdgePath, int] = {}
    for t in triangulations:
        for p, e in _path_signs(t.edge_types()).items():
            acc[p] = acc.get(p, 0) + e
    return ExponentMap(diagram, acc)


def total_partition(diagram: StripDiagram, workers: int = 1, min_parallel: int = 4096) -> ExponentMap:
    """Sum of the reduced partition functions over every triangulation.

    With ``workers > 1`` the lexicographic rank range is split into
    contiguous chunks summed in separate processes; the result does not
    depend on the split. Diagrams with fewer than ``min_parallel``
    triangulations are always summed in-process.
    """
    check_enumerable(diagram)
    total = diagram.triangulation_count
    if workers <= 1 or total < max(min_parallel, 2 * workers):
        return ExponentMap(diagram, _sum_range(diagram, 0, total))
    step = -(-total // workers)
    jobs = [(diagram.m, diagram.n, lo, min(lo + step, total)) for lo in range(0, total, step)]
    acc: dict[EdgePath, int] = {}
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for part in pool.map(_sum_range_job, jobs):
            for p, e in part.items():
                acc[p] = acc.get(p, 0) + e
    return ExponentMap(diagram, acc)


@lru_cache(maxsize=256)
def cached_total(m: int, n: int) -> ExponentMap:
    """Memoised in-process :func:`total_partition`; the result must not be mutated."""
    return total_partition(StripDiagram(m, n))


def degree_formula(diagram: StripDiagram) -> int:
    """Common exponent of the total partition function, in binomial form."""
    m, n = diagram.m, diagram.n
    if diagram.interior_edges == 0:
        raise UndefinedDegree(f"undefined-degree: C_{{{m},{n}}} has no interior edge")
    return 2 * binom(m + n - 2, m - 2) + 2 * binom(m + n - 2, n - 2) - binom(m + n, n)


def degree_recursive(diagram: StripDiagram) -> int:
    """Count of +1 contributions minus -1 contributions to the factor of path (1,1).

    +1 comes from triangulations of C_{m-2,n} and C_{m,n-2} (t_1, t_2 on the
    same row), -1 from twice those of C_{m-1,n-1}.
    """
    m, n = diagram.m, diagram.n
    if diagram.interior_edges == 0:
        raise UndefinedDegree(f"undefined-degree: C_{{{m},{n}}} has no interior edge")
    s = m + n - 2
    return binom(s, m - 2) + binom(s, n - 2) - 2 * binom(s, m - 1)


def degree_probabilistic(diagram: StripDiagram) -> int:
    m, n = diagram.m, diagram.n
    N = m + n
    if N < 2:
        raise InvalidRange(f"invalid-range: need m+n >= 2, got ({m}, {n})")
    pair = Fraction(N * (N - 1))
    p_top = m * (m - 1) / pair
    p_bottom = n * (n - 1) / pair
    d = (p_top + p_bottom - (1 - p_top - p_bottom)) * comb(N, n)
    if d.denominator != 1:
        raise ArithmeticError(f"non-integral degree {d} for ({m}, {n})")
    return d.numerator


def check_homogeneity(e: ExponentMap) -> HomogeneityReport:
    paths = edge_path_list(e.diagram)
    if not paths:
        # no factors at all: vacuously homogeneous, degree is meaningless
        return HomogeneityReport(True, None, None)
    first = paths[0]
    d = e[first]
    for p in paths[1:]:
        if e[p] != d:
            return HomogeneityReport(False, None, (first, p))
    return HomogeneityReport(True, d, None)


def signature_closed_form(N: int, m: int) -> int:
    if N < 2 or not 0 <= m <= N:
        raise InvalidRange(f"invalid-range: need N >= 2 and 0 <= m <= N, got N={N}, m={m}")
    return comb(N, m) - 4 * binom(N - 2, m - 1)


def signature_bruteforce(N: int, m: int, S: Iterable[int]) -> int:
    """Sum of T-signatures of the contiguous set ``S`` over all m-subsets T of {1..N}.

    The T-signature is the parity of the difference sequence of the
    characteristic function of T along S, written as +1/-1.
    """
    s = sorted(S)
    if N < 2 or not 0 <= m <= N:
        raise InvalidRange(f"invalid-range: need N >= 2 and 0 <= m <= N, got N={N}, m={m}")
    if not s or s != list(range(s[0], s[-1] + 1)) or s[0] < 1 or s[-1] > N - 1:
        raise InvalidRange(f"invalid-range: S must be a nonempty contiguous subset of [1, {N - 1}]")
    # an edge path {i..j} relates triangles t_i .. t_{j+1}
    span = range(s[0], s[-1] + 2)
    total = 0
    for T in combinations(range(1, N + 1), m):
        chi = [1 if k in T else 0 for k in span]
        sigma = 1
        for a, b in zip(chi, chi[1:]):
            # difference taken mod 2
            if (a - b) % 2:
                sigma = -sigma
        total += sigma
    return total


def unreduced_total(diagram: StripDiagram, workers: int = 1) -> ExponentMap:
    """Total partition function with each resolution's M(1,q)^{chi/2} restored."""
    z = total_partition(diagram, workers)
    m1 = Fraction(diagram.triangulation_count * diagram.euler_char, 2)
    return ExponentMap(diagram, z.path_exponents, m1)


def homogeneous_form(diagram: StripDiagram, degree: int) -> ExponentMap:
    """``prod_{i<=j} M(Q_ij, q)^degree`` as an exponent map."""
    return ExponentMap(diagram, {p: degree for p in edge_path_list(diagram)})
