"""Exception hierarchy. Every domain error carries a stable ``code`` string."""
from __future__ import annotations


class ConifoldError(ValueError):
    code = "domain-error"


class EnumerationRangeExceeded(ConifoldError):
    code = "enumeration-range-exceeded"


class UndefinedDegree(ConifoldError):
    code = "undefined-degree"


class InvalidRange(ConifoldError):
    code = "invalid-range"


class UnsupportedDiagram(ConifoldError):
    code = "unsupported-diagram"


class OrderMismatch(ConifoldError):
    code = "order-mismatch"


class NonUnitConstantTerm(ConifoldError):
    code = "non-unit-constant-term"


class HalfIntegerM1(ConifoldError):
    code = "half-integer-m1"
