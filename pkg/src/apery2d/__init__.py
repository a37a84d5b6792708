"""Two-dimensional Apery-style tables built from homogeneous polynomial pairs,
with exact checks and certified numerics around zeta(3)."""

from .polypair import PRESETS, PolyPair, get_preset, make_pair, search_pairs, verify_conditions
from .table import SERIES, UNIT, build, build_pq

__all__ = [
    "PRESETS", "PolyPair", "get_preset", "make_pair", "search_pairs", "verify_conditions",
    "SERIES", "UNIT", "build", "build_pq",
]
