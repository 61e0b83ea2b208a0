"""Exact rational arithmetic, polynomial rings and fraction-free linear algebra."""

from .linalg import bareiss_echelon, det_exact, mat_vec, null_space_exact, rank_exact, submatrix
from .multipoly import MultiPoly, grlex_key, natural_key
from .parsing import PolyParseError, parse_multipoly, parse_unipoly
from .scalars import NEG_INF, Scalar, as_scalar, exact_quotient, field_div, is_scalar, norm, rational_root
from .surd import QuadSurd, parse_surd
from .unipoly import UniPoly, from_multipoly

__all__ = [
    "MultiPoly",
    "NEG_INF",
    "PolyParseError",
    "QuadSurd",
    "Scalar",
    "UniPoly",
    "as_scalar",
    "bareiss_echelon",
    "det_exact",
    "exact_quotient",
    "field_div",
    "from_multipoly",
    "grlex_key",
    "is_scalar",
    "mat_vec",
    "natural_key",
    "norm",
    "null_space_exact",
    "parse_multipoly",
    "parse_surd",
    "parse_unipoly",
    "rank_exact",
    "rational_root",
    "submatrix",
]
