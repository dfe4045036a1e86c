import json
import random

import pytest
from hypothesis import given, settings, strategies as st

from conifold_dt.errors import HalfIntegerM1, NonUnitConstantTerm, OrderMismatch
from conifold_dt.flop import flop_chain_bases, flop_chain_triangulations, flop_total
from conifold_dt.mmalgebra import (
    ExponentMap,
    degree_formula,
    homogeneous_form,
    reduced_partition,
    total_partition,
    unreduced_total,
)
from conifold_dt.qseries import (
    QSeries,
    evaluate_exponent_map,
    macmahon_series,
    macmahon_series_exp,
    series_inverse,
    series_multiply,
    series_power,
)
from conifold_dt.strip import StripDiagram
from conifold_dt.verify import random_series


def univariate(coeffs, order=None):
    order = len(coeffs) - 1 if order is None else order
    return QSeries.from_terms(order, 0, ((k, (), c) for k, c in enumerate(coeffs)))


def test_plane_partitions():
    # oracle: exp(sum (i/j) q^{ij}) evaluated independently
    oracle = macmahon_series_exp(None, 4).univariate()
    assert oracle == [1, 1, 3, 6, 13]
    assert macmahon_series(None, 4).univariate() == oracle
    assert macmahon_series(None, 8).univariate() == [1, 1, 3, 6, 13, 24, 48, 86, 160]


def test_macmahon_single_variable_order_two():
    # (1 - x q)^{-1} (1 - x q^2)^{-2}: q^2 collects x^2 from the first factor and 2x from the second
    s = macmahon_series((1,), 2, 1)
    assert s.coeffs == [{(0,): 1}, {(1,): 1}, {(1,): 2, (2,): 1}]
    assert s == macmahon_series_exp((1,), 2, 1)


def test_macmahon_order_zero():
    assert macmahon_series((3, -1), 0, 2) == QSeries.one(0, 2)
    assert macmahon_series(None, 0) == QSeries.one(0, 0)


@pytest.mark.parametrize("K", range(9))
@pytest.mark.parametrize("x,r", [(None, 0), (None, 2), ((1,), 1), ((0, 1), 2), ((1, -1), 2), ((1, 1, 1), 3)])
def test_macmahon_two_forms_agree(K, x, r):
    assert macmahon_series(x, K, r) == macmahon_series_exp(x, K, r)


@pytest.mark.parametrize("power", [-3, -2, -1, 0, 2, 5])
def test_macmahon_powers_match_exp_form(power):
    x = (1, 0)
    assert series_power(macmahon_series(x, 6, 2), power) == macmahon_series_exp(x, 6, 2, power=power)


def test_multiply_basics():
    a = random_series(random.Random(1), 4, 2)
    assert a * QSeries.one(4, 2) == a
    m = macmahon_series((1,), 5, 1)
    assert m * series_power(m, -1) == QSeries.one(5, 1)
    assert univariate([1, 1, 0]) * univariate([1, -1, 0]) == univariate([1, 0, -1])


def test_order_mismatch():
    with pytest.raises(OrderMismatch):
        series_multiply(QSeries.one(3, 1), QSeries.one(4, 1))
    with pytest.raises(OrderMismatch):
        series_multiply(QSeries.one(3, 1), QSeries.one(3, 2))


def test_power_examples():
    m = macmahon_series(None, 4)
    assert series_power(m, 0) == QSeries.one(4, 0)
    assert series_power(m, 2).univariate() == [1, 2, 7, 18, 47]
    inv = series_power(m, -1)
    assert series_power(inv, -1) == m
    assert series_multiply(inv, m) == QSeries.one(4, 0)


def test_non_unit_constant_rejected():
    bad = univariate([2, 1, 0])
    with pytest.raises(NonUnitConstantTerm):
        series_power(bad, -1)
    with pytest.raises(NonUnitConstantTerm):
        series_inverse(bad)
    with pytest.raises(NonUnitConstantTerm):
        series_power(QSeries(3, 1, [{(1,): 1}]), 2)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10_000))
def test_ring_laws(seed):
    rng = random.Random(seed)
    a, b, c = (random_series(rng, 4, 2) for _ in range(3))
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10_000), st.integers(-4, 4), st.integers(-4, 4))
def test_power_laws(seed, e, f):
    a = random_series(random.Random(seed), 4, 2)
    assert series_power(a, e) * series_power(a, f) == series_power(a, e + f)


def test_evaluate_single_factor():
    z = ExponentMap(StripDiagram(1, 1), {(1, 1): -2})
    assert evaluate_exponent_map(z, 3) == series_power(macmahon_series((1,), 3, 1), -2)


def test_evaluate_total_23_equals_homogeneous_product():
    d = StripDiagram(2, 3)
    lhs = evaluate_exponent_map(total_partition(d), 4)
    assert degree_formula(d) == -2
    rhs = QSeries.one(4, 4)
    for i in range(1, 5):
        for j in range(i, 5):
            mono = tuple(1 if i <= k <= j else 0 for k in range(1, 5))
            rhs = rhs * macmahon_series_exp(mono, 4, 4, power=-2)
    assert lhs == rhs
    assert lhs == evaluate_exponent_map(homogeneous_form(d, -2), 4)


def test_evaluate_per_triangulation_product():
    d = StripDiagram(2, 2)
    from conifold_dt.strip import enumerate_triangulations

    prod = QSeries.one(3, 3)
    for t in enumerate_triangulations(d):
        prod = prod * evaluate_exponent_map(reduced_partition(t), 3)
    assert prod == evaluate_exponent_map(total_partition(d), 3)


def test_evaluate_m1_power():
    z = unreduced_total(StripDiagram(1, 1))
    expected = series_power(macmahon_series(None, 4, 1), 2) * series_power(macmahon_series((1,), 4, 1), -2)
    assert evaluate_exponent_map(z, 4) == expected


def test_evaluate_half_integer_m1():
    z = unreduced_total(StripDiagram(1, 2))
    with pytest.raises(HalfIntegerM1):
        evaluate_exponent_map(z, 3)
    sq = evaluate_exponent_map(z, 3, squared=True)
    assert sq == evaluate_exponent_map(z.scaled(2), 3)


def test_evaluate_flop_total_c13():
    K = 3
    lhs = evaluate_exponent_map(flop_total(3), K)
    rhs = series_power(macmahon_series(None, K, 3), 8)
    for t, basis in zip(flop_chain_triangulations(3), flop_chain_bases(3)):
        rhs = rhs * evaluate_exponent_map(reduced_partition(t), K).substitute(basis, 3)
    assert lhs == rhs


def test_empty_diagram_series_is_one():
    assert evaluate_exponent_map(total_partition(StripDiagram(0, 1)), 5) == QSeries.one(5, 0)


def test_text_and_json():
    s = macmahon_series((1,), 2, 1)
    assert s.to_text() == "1 * q^0 + 1 * Q1^1 * q^1 + 2 * Q1^1 * q^2 + 1 * Q1^2 * q^2"
    doc = json.loads(json.dumps(s.to_json()))
    assert doc["terms"][0] == {"q": 0, "monomial": [0], "coeff": "1"}
    assert QSeries.from_json(doc) == s
