"""Equivalence of codes over finite fields."""

from ._core import (
    AdditiveCode,
    Code,
    Error,
    Field,
    LinearCode,
    parse_code,
    read_code,
    run_cli,
    search_additive,
    search_general,
    search_semilinear,
)

__all__ = [
    "AdditiveCode",
    "Code",
    "Error",
    "Field",
    "LinearCode",
    "parse_code",
    "read_code",
    "run_cli",
    "search_additive",
    "search_general",
    "search_semilinear",
]
