# ltsplit/__init__.py
"""Exact-arithmetic toolkit for split Leibniz triple systems."""
from .leibniz_embedding import LeibnizAlgebra, derived_triple_system, standard_embedding
from .models import AlgebraError, MissingDepsError
from .split_decomposition import decompose
from .triple_core import TripleSystem, check_leibniz_triple

__version__ = "0.1.0"

__all__ = [
    "AlgebraError",
    "LeibnizAlgebra",
    "MissingDepsError",
    "TripleSystem",
    "check_leibniz_triple",
    "decompose",
    "derived_triple_system",
    "standard_embedding",
]
