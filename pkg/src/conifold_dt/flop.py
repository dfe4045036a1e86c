"""Change-of-variables total for the flop chain of C_{1,n}.

The n+1 resolutions of C_{1,n} are T={1}, {2}, ..., {n+1}; going from
T={r} to T={r+1} flops the edge e_r. Under a flop only the flopped curve
variable is inverted, so the basis of T={r+1} is the basis of T={r} with
its r-th entry replaced by its inverse. Every resolution's factors are
rewritten in the basis of T={1} and the exponents are summed.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .errors import InvalidRange, UnsupportedDiagram
from .mmalgebra import reduced_partition
from .strip import StripDiagram, Triangulation

LaurentMonomial = tuple  # exponent vector over the fixed basis


@dataclass(frozen=True)
class SignedFactorList:
    n: int
    m1_power: Fraction = Fraction(0)
    factors: Mapping[LaurentMonomial, int] = field(default_factory=dict)

    def __post_init__(self):
        clean: dict = {}
        for mono, e in self.factors.items():
            mono = tuple(mono)
            if len(mono) != self.nvars:
                raise InvalidRange(f"monomial {mono} should have {self.nvars} entries")
            if not any(mono):
                raise InvalidRange("the unit monomial belongs in m1_power, not in factors")
            clean[mono] = clean.get(mono, 0) + int(e)
        object.__setattr__(self, "factors", {k: clean[k] for k in sorted(clean) if clean[k]})
        object.__setattr__(self, "m1_power", Fraction(self.m1_power))

    @property
    def nvars(self) -> int:
        return self.n

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "m1_power_times_2": int(2 * self.m1_power),
            "factors": [{"monomial": list(k), "exp": str(e)} for k, e in self.factors.items()],
        }

    @classmethod
    def from_json(cls, doc: dict) -> SignedFactorList:
        return cls(
            int(doc["n"]),
            Fraction(int(doc["m1_power_times_2"]), 2),
            {tuple(f["monomial"]): int(f["exp"]) for f in doc["factors"]},
        )

    def to_text(self) -> str:
        m1 = self.m1_power
        parts = [f"M(1,q)^{m1.numerator if m1.denominator == 1 else m1}"] if m1 else []
        for mono, e in self.factors.items():
            arg = "".join(f"Q_{k + 1}" + (f"^{p}" if p != 1 else "") for k, p in enumerate(mono) if p)
            parts.append(f"M({arg},q)^{e}")
        return " ".join(parts) if parts else "1"


def _check_n(n: int) -> None:
    if not isinstance(n, int) or n < 1:
        raise UnsupportedDiagram(f"unsupported-diagram: flop chain needs C_{{1,n}} with n >= 1, got n={n}")


def flop_chain_triangulations(n: int) -> list[Triangulation]:
    _check_n(n)
    d = StripDiagram(1, n)
    return [Triangulation(d, (r,)) for r in range(1, n + 2)]


def flop_chain_bases(n: int, m: int = 1) -> list[list[LaurentMonomial]]:
    """For each resolution in chain order, the images of its basis variables in Q^o.

    ``bases[s][k]`` is the exponent vector of local variable k+1 of the s-th
    resolution written in the fixed basis.
    """
    if m != 1:
        raise UnsupportedDiagram(f"unsupported-diagram: flop identification is only defined for m=1, got m={m}")
    _check_n(n)
    current = [tuple(1 if i == k else 0 for i in range(n)) for k in range(n)]
    bases = [list(current)]
    for r in range(1, n + 1):
        current = list(current)
        current[r - 1] = tuple(-x for x in current[r - 1])
        bases.append(current)
    return bases


def path_monomial(basis: list[LaurentMonomial], i: int, j: int) -> LaurentMonomial:
    """Image of Q_i...Q_j (local variables) under ``basis``."""
    out = [0] * len(basis[0])
    for k in range(i, j + 1):
        for idx, x in enumerate(basis[k - 1]):
            out[idx] += x
    return tuple(out)


def flop_contributions(n: int) -> list[tuple[LaurentMonomial, int]]:
    """Every (monomial, exponent) pair before any cancellation, in chain order."""
    out = []
    for t, basis in zip(flop_chain_triangulations(n), flop_chain_bases(n)):
        for p, e in reduced_partition(t).path_exponents.items():
            out.append((path_monomial(basis, p.i, p.j), e))
    return out


def flop_total(n: int) -> SignedFactorList:
    contributions = flop_contributions(n)
    acc: dict[LaurentMonomial, int] = {}
    for mono, e in contributions:
        acc[mono] = acc.get(mono, 0) + e
    # each of the n+1 resolutions carries M(1,q)^{chi/2} with chi = n+1
    return SignedFactorList(n, Fraction((n + 1) * (n + 1), 2), acc)
