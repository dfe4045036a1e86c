"""Exact truncated power series in q with Laurent-polynomial coefficients.

Coefficients are sparse dicts ``{exponent_vector: value}`` over ``nvars``
variables Q_1..Q_r. Values are ``int`` except inside the exp-form oracle,
which works over ``Fraction`` and converts back at the end.
"""
from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Iterable, Sequence

from .errors import HalfIntegerM1, NonUnitConstantTerm, OrderMismatch

DEFAULT_ORDER = 6

Monomial = tuple  # exponent vector, possibly with negative entries
Poly = dict


def unit_monomial(nvars: int) -> Monomial:
    return (0,) * nvars


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def _mono_pow(a: Monomial, k: int) -> Monomial:
    return tuple(k * x for x in a)


def poly_add(a: Poly, b: Poly, scale=1) -> Poly:
    out = dict(a)
    for mono, c in b.items():
        v = out.get(mono, 0) + scale * c
        if v:
            out[mono] = v
        else:
            out.pop(mono, None)
    return out


def poly_mul(a: Poly, b: Poly) -> Poly:
    out: Poly = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            mono = _mono_mul(ma, mb)
            out[mono] = out.get(mono, 0) + ca * cb
    return {k: v for k, v in out.items() if v}


class QSeries:
    """Power series ``sum_{k=0}^{K} c_k(Q) q^k`` truncated after ``q^K``."""

    __slots__ = ("order", "nvars", "coeffs")

    def __init__(self, order: int, nvars: int, coeffs: Sequence[Poly] | None = None):
        if order < 0:
            raise ValueError("truncation order must be non-negative")
        self.order = order
        self.nvars = nvars
        cs = [dict() for _ in range(order + 1)]
        if coeffs is not None:
            for k, c in enumerate(coeffs):
                if k > order:
                    break
                cs[k] = {tuple(m): v for m, v in c.items() if v}
        self.coeffs = cs

    @classmethod
    def one(cls, order: int, nvars: int) -> QSeries:
        return cls(order, nvars, [{unit_monomial(nvars): 1}])

    @classmethod
    def from_terms(cls, order: int, nvars: int, terms: Iterable[tuple[int, Monomial, int]]) -> QSeries:
        s = cls(order, nvars)
        for k, mono, c in terms:
            if k <= order:
                s.coeffs[k] = poly_add(s.coeffs[k], {tuple(mono): c})
        return s

    def _check(self, other: QSeries) -> None:
        if self.order != other.order or self.nvars != other.nvars:
            raise OrderMismatch(
                f"order-mismatch: (K={self.order}, r={self.nvars}) vs (K={other.order}, r={other.nvars})"
            )

    def __eq__(self, other) -> bool:
        if not isinstance(other, QSeries):
            return NotImplemented
        return (self.order, self.nvars, self.coeffs) == (other.order, other.nvars, other.coeffs)

    def __repr__(self) -> str:
        return f"QSeries(order={self.order}, nvars={self.nvars}, {self.to_text()})"

    def __add__(self, other: QSeries) -> QSeries:
        self._check(other)
        return QSeries(self.order, self.nvars, [poly_add(a, b) for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other: QSeries) -> QSeries:
        self._check(other)
        return QSeries(self.order, self.nvars, [poly_add(a, b, -1) for a, b in zip(self.coeffs, other.coeffs)])

    def __mul__(self, other: QSeries) -> QSeries:
        return series_multiply(self, other)

    def __pow__(self, e: int) -> QSeries:
        return series_power(self, e)

    def constant_term(self) -> Poly:
        return self.coeffs[0]

    def has_unit_constant(self) -> bool:
        return self.coeffs[0] == {unit_monomial(self.nvars): 1}

    def is_integral(self) -> bool:
        return all(
            isinstance(v, int) or Fraction(v).denominator == 1 for c in self.coeffs for v in c.values()
        )

    def univariate(self) -> list:
        """Coefficients with every Q set to 1; useful when nvars == 0."""
        return [sum(c.values()) for c in self.coeffs]

    def substitute(self, images: Sequence[Monomial], nvars: int) -> QSeries:
        """Replace variable ``k`` by the Laurent monomial ``images[k]`` in ``nvars`` variables."""
        if len(images) != self.nvars:
            raise OrderMismatch(f"need {self.nvars} images, got {len(images)}")
        out = QSeries(self.order, nvars)
        for k, c in enumerate(self.coeffs):
            acc: Poly = {}
            for mono, v in c.items():
                target = unit_monomial(nvars)
                for img, p in zip(images, mono):
                    if p:
                        target = _mono_mul(target, _mono_pow(img, p))
                acc[target] = acc.get(target, 0) + v
            out.coeffs[k] = {m: v for m, v in acc.items() if v}
        return out

    def terms(self) -> list[tuple[int, Monomial, object]]:
        return [(k, mono, c[mono]) for k, c in enumerate(self.coeffs) for mono in sorted(c)]

    def to_json(self) -> dict:
        return {
            "order": self.order,
            "nvars": self.nvars,
            "terms": [{"q": k, "monomial": list(mono), "coeff": str(v)} for k, mono, v in self.terms()],
        }

    @classmethod
    def from_json(cls, doc: dict) -> QSeries:
        return cls.from_terms(
            doc["order"],
            doc["nvars"],
            ((t["q"], tuple(t["monomial"]), int(t["coeff"])) for t in doc["terms"]),
        )

    def to_text(self) -> str:
        parts = []
        for k, mono, v in self.terms():
            qs = "".join(f"Q{i + 1}^{p}" for i, p in enumerate(mono) if p)
            parts.append(" * ".join([str(v)] + ([qs] if qs else []) + [f"q^{k}"]))
        return " + ".join(parts) if parts else "0"


def series_multiply(a: QSeries, b: QSeries) -> QSeries:
    a._check(b)
    K = a.order
    out = []
    for k in range(K + 1):
        acc: Poly = {}
        for i in range(k + 1):
            if a.coeffs[i] and b.coeffs[k - i]:
                acc = poly_add(acc, poly_mul(a.coeffs[i], b.coeffs[k - i]))
        out.append(acc)
    return QSeries(K, a.nvars, out)


def series_inverse(a: QSeries) -> QSeries:
    """Reciprocal of a series whose constant term is exactly 1."""
    if not a.has_unit_constant():
        raise NonUnitConstantTerm("non-unit-constant-term: series is not invertible as a unit")
    K = a.order
    b: list[Poly] = [{unit_monomial(a.nvars): 1}]
    for k in range(1, K + 1):
        acc: Poly = {}
        for i in range(1, k + 1):
            if a.coeffs[i] and b[k - i]:
                acc = poly_add(acc, poly_mul(a.coeffs[i], b[k - i]), -1)
        b.append(acc)
    return QSeries(K, a.nvars, b)


def series_power(a: QSeries, e: int) -> QSeries:
    if not a.has_unit_constant():
        raise NonUnitConstantTerm("non-unit-constant-term: series powers need constant term 1")
    if e < 0:
        a, e = series_inverse(a), -e
    result = QSeries.one(a.order, a.nvars)
    base = a
    while e:
        if e & 1:
            result = series_multiply(result, base)
        e >>= 1
        if e:
            base = series_multiply(base, base)
    return result


def _check_mono(x: Monomial | None, nvars: int) -> Monomial:
    if x is None:
        return unit_monomial(nvars)
    x = tuple(x)
    if len(x) != nvars:
        raise OrderMismatch(f"monomial {x} does not have {nvars} entries")
    return x


def macmahon_series(x: Monomial | None, order: int, nvars: int = 0) -> QSeries:
    """``prod_{k=1}^{K} (1 - x q^k)^{-k}`` truncated at ``q^K``; ``x=None`` is the unit."""
    x = _check_mono(x, nvars)
    result = QSeries.one(order, nvars)
    for k in range(1, order + 1):
        # (1 - y)^{-k} = sum_j C(k+j-1, j) y^j  with  y = x q^k
        factor = QSeries(order, nvars)
        for j in range(order // k + 1):
            factor.coeffs[k * j] = {_mono_pow(x, j): comb(k + j - 1, j)}
        result = series_multiply(result, factor)
    return result


def series_exp(f: QSeries) -> QSeries:
    """``exp(f)`` for ``f`` with zero constant term, over the rationals."""
    if f.coeffs[0]:
        raise NonUnitConstantTerm("exp needs a series with zero constant term")
    K = f.order
    g: list[Poly] = [{unit_monomial(f.nvars): Fraction(1)}]
    # g' = f' g  =>  k g_k = sum_{j=1}^{k} j f_j g_{k-j}
    for k in range(1, K + 1):
        acc: Poly = {}
        for j in range(1, k + 1):
            if f.coeffs[j] and g[k - j]:
                acc = poly_add(acc, poly_mul(f.coeffs[j], g[k - j]), Fraction(j, k))
        g.append(acc)
    return QSeries(K, f.nvars, g)


def macmahon_series_exp(x: Monomial | None, order: int, nvars: int = 0, power=1) -> QSeries:
    """``M(x, q)^power`` via ``exp(power * sum_{i,j} (i/j) x^j q^{ij})``.

    Independent of :func:`macmahon_series`; used as the oracle for it.
    """
    x = _check_mono(x, nvars)
    log = QSeries(order, nvars)
    for i in range(1, order + 1):
        for j in range(1, order // i + 1):
            log.coeffs[i * j] = poly_add(log.coeffs[i * j], {_mono_pow(x, j): Fraction(power * i, j)})
    g = series_exp(log)
    if not g.is_integral():
        raise ArithmeticError("MacMahon expansion produced a non-integer coefficient")
    return QSeries(order, nvars, [{m: int(v) for m, v in c.items()} for c in g.coeffs])


def _factor_items(e) -> tuple[int, Fraction, list[tuple[Monomial, int]]]:
    """(nvars, m1_power, [(monomial, exponent)]) for an ExponentMap or SignedFactorList."""
    from .flop import SignedFactorList
    from .mmalgebra import ExponentMap

    if isinstance(e, ExponentMap):
        r = e.diagram.interior_edges
        items = []
        for p, x in e.path_exponents.items():
            mono = tuple(1 if p.i <= k + 1 <= p.j else 0 for k in range(r))
            items.append((mono, x))
        return r, e.m1_power, items
    if isinstance(e, SignedFactorList):
        return e.nvars, e.m1_power, list(e.factors.items())
    raise TypeError(f"cannot evaluate {type(e).__name__}")


def evaluate_exponent_map(e, order: int = DEFAULT_ORDER, squared: bool = False) -> QSeries:
    """Expand ``M(1,q)^{m1} * prod M(x, q)^{exp}`` to order ``q^K``.

    A half-integral ``m1`` power is rejected unless ``squared`` is set, in
    which case the square of the product is returned.
    """
    nvars, m1, items = _factor_items(e)
    scale = 2 if squared else 1
    m1 = m1 * scale
    if m1.denominator != 1:
        raise HalfIntegerM1(f"half-integer-m1: M(1,q) power {m1} is not integral; evaluate the square")
    result = QSeries.one(order, nvars)
    if m1:
        result = series_multiply(result, series_power(macmahon_series(None, order, nvars), int(m1)))
    for mono, x in items:
        result = series_multiply(result, series_power(macmahon_series(mono, order, nvars), scale * x))
    return result
