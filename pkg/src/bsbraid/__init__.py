"""Exact computations with Bott-Samelson bimodules, Rouquier complexes and slide maps."""

from .poly import Poly, VarShift, parse_poly
from .bimod import BSObject, BimodElement, BimodMorphism

__all__ = ["Poly", "VarShift", "parse_poly", "BSObject", "BimodElement", "BimodMorphism"]
__version__ = "0.1.0"
