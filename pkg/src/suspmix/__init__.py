"""Exact mixing analysis for suspension flows over shift spaces."""

from suspmix.exact import (
    AmbiguousSignError,
    QVector,
    RealBasis,
    parse_qvector,
    rational_gcd,
    setwise_commensurate,
    span_rank,
)

__all__ = [
    "AmbiguousSignError",
    "QVector",
    "RealBasis",
    "parse_qvector",
    "rational_gcd",
    "setwise_commensurate",
    "span_rank",
]

__version__ = "0.1.0"
