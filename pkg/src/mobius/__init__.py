"""Exact Möbius functions for posets, reflexive digraphs, finite categories and decompositions."""
from .core import (ContextMismatchError, ConvolutionContext, IncidenceElement, NotInvertibleError,
                   convolve, invert, is_unit)
from .poset import Poset, PosetError, build_poset, family, mobius

__all__ = ["ContextMismatchError", "ConvolutionContext", "IncidenceElement", "NotInvertibleError",
           "convolve", "invert", "is_unit", "Poset", "PosetError", "build_poset", "family", "mobius"]
