import json

import pytest

from conifold_dt.errors import InvalidRange
from conifold_dt.mmalgebra import check_homogeneity, degree_formula, total_partition
from conifold_dt.partial import (
    BlockDecomposition,
    block_multiplicities,
    crossing_paths,
    factorize,
    refines,
    restricted_total,
    restricted_total_bruteforce,
    restricted_triangulations,
)
from conifold_dt.strip import StripDiagram, enumerate_triangulations
from conifold_dt.verify import decompositions


def dec(*blocks):
    return BlockDecomposition.of(blocks)


def test_validation():
    with pytest.raises(InvalidRange):
        BlockDecomposition(StripDiagram(2, 2), ((1, 1),))
    with pytest.raises(InvalidRange):
        BlockDecomposition(StripDiagram(1, 1), ((1, 1), (0, 0)))
    with pytest.raises(InvalidRange):
        BlockDecomposition(StripDiagram(1, 1), ())


def test_single_block_is_unrestricted():
    d = dec((2, 3))
    assert [t.top_set for t in restricted_triangulations(d)] == [
        t.top_set for t in enumerate_triangulations(d.diagram)
    ]
    assert block_multiplicities(d) == [1]
    assert restricted_total(d) == total_partition(d.diagram)
    f = factorize(d)
    assert f.zpp.path_exponents == {}
    assert f.block_factors == [(total_partition(d.diagram), 1)]


def test_example_34():
    d = dec((2, 1), (1, 3))
    tris = list(restricted_triangulations(d))
    assert len(tris) == 12 == d.count()
    assert d.fixed_edges == [3]
    assert block_multiplicities(d) == [4, 3]


def test_forced_conifold():
    d = dec((1, 0), (0, 1))
    assert [t.top_set for t in restricted_triangulations(d)] == [(1,)]
    assert restricted_total(d).path_exponents == {(1, 1): -1}


def test_three_equal_blocks():
    assert block_multiplicities(dec((1, 1), (1, 1), (1, 1))) == [4, 4, 4]


def test_factorize_c22():
    d = dec((1, 1), (1, 1))
    f = factorize(d)
    assert [b for _, b in f.block_factors] == [2, 2]
    assert check_homogeneity(total_partition(StripDiagram(1, 1))).degree == -2
    assert f.block_factors[0][0].path_exponents == {(1, 1): -2}
    assert f.block_factors[1][0].path_exponents == {(3, 3): -2}
    assert f.crossing_ok()
    assert f.recombine() == restricted_total_bruteforce(d)


@pytest.mark.parametrize("m,n", [(2, 2), (3, 2), (3, 4), (2, 5), (0, 4)])
def test_restricted_generation_matches_filter(m, n):
    for blocks in decompositions(m, n):
        d = BlockDecomposition(StripDiagram(m, n), blocks)
        fast = [t.top_set for t in restricted_triangulations(d)]
        slow = [t.top_set for t in enumerate_triangulations(d.diagram) if refines(t, d)]
        assert fast == slow
        assert len(fast) == d.count()


@pytest.mark.parametrize("m,n", [(2, 3), (3, 3), (1, 5)])
def test_factorization_identity(m, n):
    for blocks in decompositions(m, n):
        d = BlockDecomposition(StripDiagram(m, n), blocks)
        f = factorize(d)
        assert f.recombine() == restricted_total_bruteforce(d)
        assert set(f.zpp.path_exponents) <= set(crossing_paths(d))
        for (a, b), (block, _) in zip(blocks, f.block_factors):
            if a + b >= 2:
                rep = check_homogeneity(total_partition(StripDiagram(a, b)))
                assert rep.is_homogeneous and rep.degree == degree_formula(StripDiagram(a, b))


def test_json():
    d = dec((2, 1), (1, 3))
    doc = json.loads(json.dumps(factorize(d).to_json()))
    assert doc["blocks"] == [[2, 1], [1, 3]]
    assert [b["multiplicity"] for b in doc["block_factors"]] == ["4", "3"]
    assert BlockDecomposition.from_json(doc) == d
