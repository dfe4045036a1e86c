"""Invariant checks over ranges of diagrams, shared by the ``verify`` subcommand and tests."""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Callable, Iterator

from . import flop, mmalgebra, partial, qseries, strip
from .strip import StripDiagram


@dataclass
class CheckResult:
    name: str
    passed: bool
    cases: int
    detail: str = ""

    def to_json(self) -> dict:
        return {"property": self.name, "passed": self.passed, "cases": self.cases, "detail": self.detail}


def diagrams(max_size: int, min_size: int = 1) -> Iterator[StripDiagram]:
    for size in range(min_size, max_size + 1):
        for m in range(size + 1):
            yield StripDiagram(m, size - m)


def decompositions(m: int, n: int) -> Iterator[tuple[tuple[int, int], ...]]:
    """All ordered block lists summing to (m, n) with every block nonzero."""
    if m == 0 and n == 0:
        yield ()
        return
    for a in range(m + 1):
        for b in range(n + 1):
            if a + b == 0:
                continue
            for rest in decompositions(m - a, n - b):
                yield ((a, b),) + rest


def _run(name: str, cases: Iterator, check: Callable[..., str | None]) -> CheckResult:
    count = 0
    for case in cases:
        count += 1
        problem = check(case)
        if problem:
            return CheckResult(name, False, count, f"{case}: {problem}")
    return CheckResult(name, True, count)


# -- strip -----------------------------------------------------------------

def check_enumeration_count(max_size: int) -> CheckResult:
    def check(d):
        got = sum(1 for _ in strip.enumerate_triangulations(d))
        return None if got == comb(d.size, d.m) else f"enumerated {got}"

    return _run("strip.enumeration_count", diagrams(max_size), check)


def check_edge_type_partition(max_size: int) -> CheckResult:
    def check(d):
        for t in strip.enumerate_triangulations(d):
            types = t.edge_types()
            if types.count(1) + types.count(-1) != d.interior_edges:
                return f"T={t.top_set}"
        return None

    return _run("strip.edge_types_sum_to_interior_edges", diagrams(max_size), check)


def check_complement_symmetry(max_size: int) -> CheckResult:
    def check(d):
        for t in strip.enumerate_triangulations(d):
            if t.complement().edge_types() != t.edge_types():
                return f"T={t.top_set}"
        return None

    return _run("strip.complement_symmetry", diagrams(max_size), check)


def check_enumeration_deterministic(max_size: int) -> CheckResult:
    def check(d):
        a = [t.top_set for t in strip.enumerate_triangulations(d)]
        b = [t.top_set for t in strip.enumerate_triangulations(d)]
        return None if a == b and a == sorted(a) else "order differs"

    return _run("strip.enumeration_deterministic", diagrams(max_size), check)


# -- mmalgebra -------------------------------------------------------------

def check_homogeneity_theorem(max_size: int) -> CheckResult:
    cases = (d for d in diagrams(max_size, 2) if 1 <= d.m <= d.n)

    def check(d):
        rep = mmalgebra.check_homogeneity(mmalgebra.total_partition(d))
        d1, d2 = mmalgebra.degree_formula(d), mmalgebra.degree_probabilistic(d)
        if not rep.is_homogeneous:
            return f"witness {rep.witness}"
        if not rep.degree == d1 == d2:
            return f"degrees {rep.degree}, {d1}, {d2}"
        return None

    return _run("mmalgebra.homogeneity_theorem", cases, check)


def check_signature(max_size: int) -> CheckResult:
    def cases():
        for N in range(2, max_size + 1):
            for m in range(N + 1):
                yield N, m

    def check(case):
        N, m = case
        closed = mmalgebra.signature_closed_form(N, m)
        for i in range(1, N):
            for j in range(i, N):
                if mmalgebra.signature_bruteforce(N, m, range(i, j + 1)) != closed:
                    return f"S={{{i}..{j}}}"
        return None

    return _run("mmalgebra.signature_closed_form", cases(), check)


def check_path_level(max_size: int) -> CheckResult:
    def check(d):
        z = mmalgebra.total_partition(d)
        for p in strip.edge_path_list(d):
            if z[p] != mmalgebra.signature_closed_form(d.size, d.m):
                return f"path {tuple(p)}"
        return None

    return _run("mmalgebra.path_level_signature", diagrams(max_size, 2), check)


def check_parallel_additivity(max_size: int, workers: int = 2) -> CheckResult:
    cases = [d for d in diagrams(max_size) if d.m == d.size // 2][-2:]

    def check(d):
        seq = mmalgebra.sum_reduced(strip.enumerate_triangulations(d), d)
        par = mmalgebra.total_partition(d, workers=workers, min_parallel=0)
        return None if seq == par else "parallel sum differs"

    return _run("mmalgebra.additivity_parallel", iter(cases), check)


def check_mn_symmetry(max_size: int) -> CheckResult:
    def check(d):
        a = sorted(mmalgebra.total_partition(d).path_exponents.values())
        b = sorted(mmalgebra.total_partition(StripDiagram(d.n, d.m)).path_exponents.values())
        if a != b:
            return "exponent multisets differ"
        if d.interior_edges and mmalgebra.degree_formula(d) != mmalgebra.degree_formula(StripDiagram(d.n, d.m)):
            return "degree not symmetric"
        return None

    return _run("mmalgebra.mn_symmetry", diagrams(max_size), check)


def check_degree_recursive(max_size: int) -> CheckResult:
    def check(d):
        return None if mmalgebra.degree_recursive(d) == mmalgebra.degree_formula(d) else "mismatch"

    return _run("mmalgebra.degree_recursive_identity", diagrams(max_size, 2), check)


def check_unreduced_m1(max_size: int) -> CheckResult:
    def check(d):
        z = mmalgebra.unreduced_total(d)
        want = Fraction(comb(d.size, d.m) * d.size, 2)
        return None if z.m1_power == want else f"m1={z.m1_power}"

    return _run("mmalgebra.unreduced_m1_power", diagrams(max_size), check)


# -- flop ------------------------------------------------------------------

def check_flop_cancellation(max_n: int) -> CheckResult:
    def check(n):
        contrib = flop.flop_contributions(n)
        if len(contrib) != (n + 1) * comb(n + 1, 2):
            return f"{len(contrib)} contributions"
        total = flop.flop_total(n)
        acc: dict = {}
        for mono, e in contrib:
            acc[mono] = acc.get(mono, 0) + e
        if {k: v for k, v in acc.items() if v} != dict(total.factors):
            return "cancellation mismatch"
        # monomial rewriting preserves the exponent sum of every resolution
        want = comb(n + 1, 2) * mmalgebra.degree_formula(StripDiagram(1, n))
        if sum(total.factors.values()) != want:
            return f"exponent sum {sum(total.factors.values())} != {want}"
        return None

    return _run("flop.cancellation", iter(range(1, max_n + 1)), check)


def check_flop_series(order: int = 3) -> CheckResult:
    def check(n):
        total = qseries.evaluate_exponent_map(flop.flop_total(n), order, squared=True)
        prod = qseries.QSeries.one(order, n)
        for t, basis in zip(flop.flop_chain_triangulations(n), flop.flop_chain_bases(n)):
            local = qseries.evaluate_exponent_map(mmalgebra.reduced_partition(t), order, squared=True)
            prod = prod * local.substitute(basis, n)
        chi = n + 1
        prod = prod * qseries.series_power(qseries.macmahon_series(None, order, n), chi * (n + 1))
        return None if prod == total else "series differ"

    return _run("flop.series_product", iter(range(1, 4)), check)


# -- qseries ---------------------------------------------------------------

def check_macmahon_forms(max_order: int = 8) -> CheckResult:
    def cases():
        for K in range(max_order + 1):
            yield K, None, 0
            yield K, (1,), 1
            yield K, (0, -1), 2

    def check(case):
        K, x, r = case
        if qseries.macmahon_series(x, K, r) != qseries.macmahon_series_exp(x, K, r):
            return "product and exponential forms differ"
        return None

    return _run("qseries.macmahon_two_forms", cases(), check)


def check_series_identity(max_size: int = 5, order: int = 5) -> CheckResult:
    def check(d):
        lhs = qseries.evaluate_exponent_map(mmalgebra.total_partition(d), order)
        r = d.interior_edges
        rhs = qseries.QSeries.one(order, r)
        if r:
            deg = mmalgebra.degree_formula(d)
            for p in strip.edge_path_list(d):
                mono = tuple(1 if p.i <= k + 1 <= p.j else 0 for k in range(r))
                rhs = rhs * qseries.macmahon_series_exp(mono, order, r, power=deg)
        return None if lhs == rhs else "series differ"

    return _run("qseries.total_equals_homogeneous_product", diagrams(max_size), check)


def random_series(rng: random.Random, order: int, nvars: int) -> qseries.QSeries:
    s = qseries.QSeries.one(order, nvars)
    for k in range(1, order + 1):
        for _ in range(rng.randint(0, 3)):
            mono = tuple(rng.randint(-2, 2) for _ in range(nvars))
            s.coeffs[k] = qseries.poly_add(s.coeffs[k], {mono: rng.randint(-5, 5)})
    return s


def check_series_ring_laws(trials: int = 20, seed: int = 7) -> CheckResult:
    rng = random.Random(seed)

    def cases():
        for _ in range(trials):
            yield tuple(random_series(rng, 5, 2) for _ in range(3))

    def check(case):
        a, b, c = case
        if a * b != b * a:
            return "not commutative"
        if (a * b) * c != a * (b * c):
            return "not associative"
        return None

    return _run("qseries.ring_laws", cases(), check)


# -- partial ---------------------------------------------------------------

def _all_decompositions(max_size: int):
    for d in diagrams(max_size):
        for blocks in decompositions(d.m, d.n):
            yield partial.BlockDecomposition(d, blocks)


def check_restricted_count(max_size: int) -> CheckResult:
    def check(dec):
        got = sum(1 for t in strip.enumerate_triangulations(dec.diagram) if partial.refines(t, dec))
        fast = sum(1 for _ in partial.restricted_triangulations(dec))
        return None if got == fast == dec.count() else f"{got}/{fast} vs {dec.count()}"

    return _run("partial.restricted_count", _all_decompositions(max_size), check)


def check_factorization(max_size: int) -> CheckResult:
    def check(dec):
        f = partial.factorize(dec)
        if f.recombine() != partial.restricted_total_bruteforce(dec):
            return "recombination differs from brute force"
        if not f.crossing_ok():
            return f"non-crossing path in Z'': {f.zpp.path_exponents}"
        for (a, b), (block, _) in zip(dec.blocks, f.block_factors):
            if a + b < 2:
                continue
            rep = mmalgebra.check_homogeneity(mmalgebra.cached_total(a, b))
            if not rep.is_homogeneous or rep.degree != mmalgebra.degree_formula(StripDiagram(a, b)):
                return f"block ({a},{b}) not homogeneous of the expected degree"
        return None

    return _run("partial.factorization", _all_decompositions(max_size), check)


def run_all(max_size: int = 10, workers: int = 2) -> list[CheckResult]:
    """Run every invariant; heavier families are capped below ``max_size``."""
    return [
        check_enumeration_count(max_size),
        check_edge_type_partition(max_size),
        check_complement_symmetry(max_size),
        check_enumeration_deterministic(max_size),
        check_homogeneity_theorem(max_size),
        check_signature(max_size),
        check_path_level(max_size),
        check_parallel_additivity(max_size, workers),
        check_mn_symmetry(max_size),
        check_degree_recursive(max_size),
        check_unreduced_m1(max_size),
        check_flop_cancellation(min(max_size, 8)),
        check_flop_series(),
        check_macmahon_forms(min(max_size, 8)),
        check_series_identity(min(max_size, 5)),
        check_series_ring_laws(),
        check_restricted_count(min(max_size, 9)),
        check_factorization(min(max_size, 9)),
    ]
