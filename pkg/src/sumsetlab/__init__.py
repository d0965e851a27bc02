"""sumsetlab: exact-arithmetic experiments on sumsets of convex integer sets.

Sumsets, difference sets, representation functions, additive energies and
their unconditional identities are computed exactly (arbitrary precision,
zero tolerance); growth bounds that hold only up to absolute constants are
measured, never asserted.
"""

from .convexgen import (
    GapVector,
    extract_gaps,
    generate,
    has_distinct_consecutive_differences,
    is_convex,
    mian_chowla,
    random_convex,
    realize,
)
from .energy import (
    DyadicLayer,
    PopularSet,
    RankedDifferences,
    dyadic_layers,
    energy,
    energy3,
    energy_formulas,
    popular_set,
    ranked_differences,
)
from .setcore import (
    FileFormatError,
    IntegerSet,
    RepFunction,
    diffset,
    load_set,
    parse_set_text,
    rep_function,
    save_set,
    slice_set,
    sumset,
)

__version__ = "0.1.0"

__all__ = [
    "DyadicLayer",
    "FileFormatError",
    "GapVector",
    "IntegerSet",
    "PopularSet",
    "RankedDifferences",
    "RepFunction",
    "diffset",
    "dyadic_layers",
    "energy",
    "energy3",
    "energy_formulas",
    "extract_gaps",
    "generate",
    "has_distinct_consecutive_differences",
    "is_convex",
    "load_set",
    "mian_chowla",
    "parse_set_text",
    "popular_set",
    "random_convex",
    "ranked_differences",
    "realize",
    "rep_function",
    "save_set",
    "slice_set",
    "sumset",
]
