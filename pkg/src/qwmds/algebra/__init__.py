"""Exact arithmetic in Z[t, x1..xr] (q = t**2) and its fraction field."""
from .factored import FactoredRational, canonical_key
from .poly import (
    NotDivisible,
    SparsePoly,
    VariableMismatch,
    default_vars,
    poly_arith,
    poly_exact_div,
    try_exact_div,
)
from .ratfunc import MonomialMap, RatFunc, ratfunc_arith, substitute, x_vars
from .series import (
    NotExpandable,
    SeriesTruncation,
    coeff_extract_univariate,
    geometric_product,
    series_expand,
)
from .upoly import UPoly

__all__ = [
    "FactoredRational", "canonical_key", "NotDivisible", "SparsePoly", "VariableMismatch",
    "default_vars", "poly_arith", "poly_exact_div", "try_exact_div", "MonomialMap", "RatFunc",
    "ratfunc_arith", "substitute", "x_vars", "NotExpandable", "SeriesTruncation",
    "coeff_extract_univariate", "geometric_product", "series_expand", "UPoly",
]
