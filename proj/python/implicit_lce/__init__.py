"""Implicit Karp-Rabin LCE index with in-place sparse suffix sorting."""

from ._core import (
    BuildError,
    CapacityError,
    ContractError,
    Error,
    Index,
    IndexError,
    InputError,
    StateError,
    lcp_array,
)

__all__ = [
    "BuildError",
    "CapacityError",
    "ContractError",
    "Error",
    "Index",
    "IndexError",
    "InputError",
    "StateError",
    "lcp_array",
]
