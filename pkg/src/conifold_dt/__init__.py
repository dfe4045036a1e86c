"""Exact total Donaldson-Thomas partition functions of generalised conifolds C_{m,n}."""
from .errors import (
    ConifoldError,
    EnumerationRangeExceeded,
    HalfIntegerM1,
    InvalidRange,
    NonUnitConstantTerm,
    OrderMismatch,
    UndefinedDegree,
    UnsupportedDiagram,
)
from .flop import SignedFactorList, flop_chain_bases, flop_total
from .mmalgebra import (
    ExponentMap,
    HomogeneityReport,
    check_homogeneity,
    degree_formula,
    degree_probabilistic,
    reduced_partition,
    signature_bruteforce,
    signature_closed_form,
    total_partition,
    unreduced_total,
)
from .partial import (
    BlockDecomposition,
    block_multiplicities,
    factorize,
    restricted_total,
    restricted_triangulations,
)
from .qseries import (
    QSeries,
    evaluate_exponent_map,
    macmahon_series,
    series_multiply,
    series_power,
)
from .strip import (
    EdgePath,
    StripDiagram,
    Triangulation,
    counts,
    edge_path_list,
    edge_type,
    enumerate_triangulations,
)

__version__ = "0.1.0"
