"""Frobenius closures, special parts, F-spreads, minimal reductions and chains of closed ideals."""

from .frobenius import ClosureConfig, frobenius_closure, special_part
from .groebner import IdealHandle, QuotientRing
from .poly import PolyRing, Polynomial

__all__ = [
    "ClosureConfig",
    "IdealHandle",
    "PolyRing",
    "Polynomial",
    "QuotientRing",
    "frobenius_closure",
    "special_part",
]
