"""Exact stability fans for extended ADE intersection arrangements.

The library side locates stability vectors in the arrangement
(:class:`~stabfan.fan.Arrangement`), and :mod:`stabfan.quiver` checks the
predicted stable counts by brute force on explicit representations.
"""
from .errors import StabfanError
from .fan import Arrangement, Classification, FaceDescriptor, FanSlice
from .rootdata import DynkinDiagram, build_diagram, cartan_matrix, marks, parse_diagram, validate_subset
from .weyl import FaceKey, apply_word, delta_pairing, descent, face_key, reflect

__version__ = "0.1.0"

__all__ = [
    "Arrangement",
    "Classification",
    "DynkinDiagram",
    "FaceDescriptor",
    "FaceKey",
    "FanSlice",
    "StabfanError",
    "apply_word",
    "build_diagram",
    "cartan_matrix",
    "delta_pairing",
    "descent",
    "face_key",
    "marks",
    "parse_diagram",
    "reflect",
    "validate_subset",
]
