import json
from fractions import Fraction
from math import comb

import pytest

from conifold_dt.errors import InvalidRange, UnsupportedDiagram
from conifold_dt.flop import (
    SignedFactorList,
    flop_chain_bases,
    flop_contributions,
    flop_total,
)
from conifold_dt.mmalgebra import degree_formula
from conifold_dt.strip import StripDiagram

from conftest import GOLDEN


def test_bases_conifold():
    assert flop_chain_bases(1) == [[(1,)], [(-1,)]]


def test_bases_c13():
    q, r, s, t = flop_chain_bases(3)
    assert q == [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    assert r == [(-1, 0, 0), (0, 1, 0), (0, 0, 1)]
    assert s == [(-1, 0, 0), (0, -1, 0), (0, 0, 1)]
    assert t == [(-1, 0, 0), (0, -1, 0), (0, 0, -1)]


def test_unsupported():
    with pytest.raises(UnsupportedDiagram):
        flop_chain_bases(3, m=2)
    with pytest.raises(UnsupportedDiagram):
        flop_total(0)


def test_flop_total_c13_matches_transcribed_display():
    golden = json.loads((GOLDEN / "flop_n3.json").read_text())
    z = flop_total(3)
    assert z.m1_power == 8
    assert len(z.factors) == 12
    assert z.to_json() == golden


def test_flop_total_conifold():
    # The tau-product rule with R_1 = Q_1^{-1} gives M(Q_1)^{-1} M(Q_1^{-1})^{-1}.
    # The opposite convention would give M(Q_1) M(Q_1^{-1}). This rule is the one
    # that reproduces the C_{1,3} golden product exactly, so it is kept.
    z = flop_total(1)
    assert z.m1_power == 2
    assert z.factors == {(-1,): -1, (1,): -1}
    # closed under monomial inversion with equal exponents
    assert {tuple(-x for x in k): e for k, e in z.factors.items()} == z.factors


def test_flop_total_c12_hand_computed():
    # T={1}: Q1^-1 Q1Q2^-1 Q2^+1; T={2} in R: R1^-1 R1R2^+1 R2^-1; T={3} in S: S1^+1 S1S2^-1 S2^-1
    # with R = (Q1^-1, Q2), S = (Q1^-1, Q2^-1); Q2 and Q1^-1 cancel.
    z = flop_total(2)
    assert z.m1_power == Fraction(9, 2)
    assert z.factors == {(-1, -1): -1, (-1, 1): 1, (0, -1): -1, (1, 0): -1, (1, 1): -1}


def test_c13_numerator_denominator_structure():
    z = flop_total(3)
    plus = {k for k, e in z.factors.items() if e == 1}
    minus = {k for k, e in z.factors.items() if e == -1}
    assert len(plus) == len(minus) == 6
    # inverting the numerator does not give the denominator: only Q_1 and Q_3^{-1} match
    inverted = {tuple(-x for x in k) for k in plus}
    assert inverted & minus == {(1, 0, 0), (0, 0, -1)}


@pytest.mark.parametrize("n", range(1, 8))
def test_cancellation_and_exponent_sum(n):
    contrib = flop_contributions(n)
    assert len(contrib) == (n + 1) * comb(n + 1, 2)
    acc = {}
    for mono, e in contrib:
        acc[mono] = acc.get(mono, 0) + e
    z = flop_total(n)
    assert {k: v for k, v in acc.items() if v} == z.factors
    assert sum(z.factors.values()) == comb(n + 1, 2) * degree_formula(StripDiagram(1, n))
    assert z.m1_power == Fraction((n + 1) ** 2, 2)


def test_signed_factor_list_validation_and_json():
    with pytest.raises(InvalidRange):
        SignedFactorList(2, 0, {(1,): 1})
    with pytest.raises(InvalidRange):
        SignedFactorList(2, 0, {(0, 0): 1})
    z = flop_total(2)
    doc = json.loads(json.dumps(z.to_json()))
    assert doc["m1_power_times_2"] == 9
    assert [f["monomial"] for f in doc["factors"]] == sorted(f["monomial"] for f in doc["factors"])
    assert SignedFactorList.from_json(doc) == z


def test_text():
    assert flop_total(1).to_text() == "M(1,q)^2 M(Q_1^-1,q)^-1 M(Q_1,q)^-1"
