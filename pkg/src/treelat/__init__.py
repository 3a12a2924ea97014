"""Hypothesis checks for finiteness of discrete overgroups of cocompact
lattices in products of two regular trees.

The package decides, from finite combinatorial input (one-vertex VH
square-complex data, or raw permutation generator sets), whether the local
actions are quasi-primitive of constant almost simple type with
non-discreteness evidence, and evaluates the section obstruction and the
index-chain arithmetic that drive the finiteness criterion.
"""

from .errors import TreelatError
from .permcore import (
    PermGroup,
    Permutation,
    compose,
    inverse,
    perm_group,
)
from .vhcomplex import VhDatum, parse_datum, serialize_datum, validate
from .localaction import local_group, tower, discreteness_verdict
from .pipeline import (
    AnalysisCaps,
    WangReport,
    analyze_datum,
    analyze_pair,
    wang_index_bound,
)

__version__ = "0.1.0"

__all__ = [
    "AnalysisCaps",
    "PermGroup",
    "Permutation",
    "TreelatError",
    "VhDatum",
    "WangReport",
    "analyze_datum",
    "analyze_pair",
    "compose",
    "discreteness_verdict",
    "inverse",
    "local_group",
    "parse_datum",
    "perm_group",
    "serialize_datum",
    "tower",
    "validate",
    "wang_index_bound",
    "__version__",
]
