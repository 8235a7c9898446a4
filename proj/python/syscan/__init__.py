"""Entropy-controlled systematic generalization benchmarks on modified SCAN."""

from ._core import (
    CapacityError,
    CoverageError,
    EmptySliceError,
    Error,
    FormatError,
    InvalidArgument,
    InvariantError,
    ParseError,
    RangeError,
    __version__,
    aggregate,
    build_sample_size_suite,
    build_test,
    build_train,
    default_horizontal_grid,
    default_vertical_grid,
    emit_table,
    entropy,
    enumerate_embedded,
    interpret,
    lambda_for_entropy,
    mixture_distribution,
    oracle_interpret,
    parse_command,
    score,
    support_distribution,
    verbs,
)

__all__ = [name for name in dir() if not name.startswith("_")] + ["__version__"]
