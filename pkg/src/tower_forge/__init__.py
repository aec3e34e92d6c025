"""Towers of curves from projectivised l-adic torsion, at desk scale."""

from .residue_ring import Modulus, Residue
from .proj_space import ProjPoint, ProjSpaceParams, canonicalize, cardinality_formula, enumerate_space
from .monodromy import MonodromyMatrix, act, classify_even_level, orbit_decomposition
from .finite_field import FieldPoly, PrimeField, QuadField, make_quad_ext
from .legendre import LegendreCurve, count_points, hasse_polynomial, supersingular_locus, weil_data
from .tower import TowerParams, beta_report, genus_closed_form, hurwitz_genus

__version__ = "0.1.0"

__all__ = [
    "Modulus", "Residue", "ProjPoint", "ProjSpaceParams", "canonicalize", "cardinality_formula",
    "enumerate_space", "MonodromyMatrix", "act", "classify_even_level", "orbit_decomposition",
    "FieldPoly", "PrimeField", "QuadField", "make_quad_ext", "LegendreCurve", "count_points",
    "hasse_polynomial", "supersingular_locus", "weil_data", "TowerParams", "beta_report",
    "genus_closed_form", "hurwitz_genus",
]
