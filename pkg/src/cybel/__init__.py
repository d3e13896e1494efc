"""Exact Belavin-Drinfeld r-matrices, their centralizers and Galois cocycles."""

__version__ = "0.1.0"

from .bdtriple import AdmissibleTriple, enumerate_triples, triple_from_text, validate
from .centralizer import constraint_lattice, decompose, h1_describe, lattice_model
from .chevalley import AlgebraAutomorphism, ChevalleyAlgebra, build_algebra, build_S, casimir
from .rmatrix import RMatrix, build_bd, build_dj, solve_r0, verify_equivalence
from .rootsys import build as build_root_system
from .rootsys import longest_weyl
from .tensor import Tensor2, Tensor3, cobracket, cyb, swap

__all__ = [
    "AdmissibleTriple",
    "AlgebraAutomorphism",
    "ChevalleyAlgebra",
    "RMatrix",
    "Tensor2",
    "Tensor3",
    "build_S",
    "build_algebra",
    "build_bd",
    "build_dj",
    "build_root_system",
    "casimir",
    "cobracket",
    "constraint_lattice",
    "cyb",
    "decompose",
    "enumerate_triples",
    "h1_describe",
    "lattice_model",
    "longest_weyl",
    "solve_r0",
    "swap",
    "triple_from_text",
    "validate",
    "verify_equivalence",
]
