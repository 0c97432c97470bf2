"""Schubert calculus on even orthogonal Grassmannians OG(m, N)."""

from .partitions import (
    GrassParams,
    KStrictPartition,
    PartitionError,
    TypedPartition,
    parse_text,
)

__version__ = "0.1.0"

__all__ = [
    "GrassParams",
    "KStrictPartition",
    "PartitionError",
    "TypedPartition",
    "parse_text",
]
