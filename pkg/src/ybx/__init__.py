"""Trigonometric solutions of the associative Yang-Baxter equation from
Belavin-Drinfeld combinatorics, with exact randomized verification."""

from .perms import ABDStructure, Permutation, parse_cycles, format_cycles
from .scalars import PrimeField, RationalField, RATIONAL, field_from_name
from .trig import TrigSolution

__all__ = [
    "ABDStructure",
    "Permutation",
    "PrimeField",
    "RationalField",
    "RATIONAL",
    "TrigSolution",
    "field_from_name",
    "parse_cycles",
    "format_cycles",
]

__version__ = "0.1.0"
