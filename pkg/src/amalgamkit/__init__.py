"""Finite-field linear algebra, word evaluation and permutation-group tools for
reproducing the desk-scale computations behind the PSL2(8) amalgam search."""

from .actions import BSGS, OrbitPartition, Perm, orbits, schreier_sims
from .fields import GF2, GF8, BinaryField, FieldElement, Poly2, field_make, poly_factor_gf2
from .formula import LiftSpec, lift_formula, probable_order
from .linalg import DenseMatrix, Subspace, element_order, min_poly, split_homogeneous
from .words import ElementScript, eval_word, parse_script, parse_word

__version__ = "0.1.0"

__all__ = [
    "BSGS", "BinaryField", "DenseMatrix", "ElementScript", "FieldElement", "GF2", "GF8",
    "LiftSpec", "OrbitPartition", "Perm", "Poly2", "Subspace", "element_order", "eval_word",
    "field_make", "lift_formula", "min_poly", "orbits", "parse_script", "parse_word",
    "poly_factor_gf2", "probable_order", "schreier_sims", "split_homogeneous",
]
