"""Exact-arithmetic laboratory for sum-product growth estimates."""

__version__ = "0.1.0"

from ._config import options
from .counting import (
    MultiplicityTable,
    additive_energy,
    collinear_energy,
    heavy_ratio_set,
    paper_threshold,
    quad_count,
    quad_slice,
    rep_table,
    sigma,
    verify_basic_identity,
)
from .errors import CertificationError, InputError, ResourceCapError, SumProdError
from .exact import NumSet, affine_image, build_set, format_scalar, parse_scalar, set_union
from .families import FamilySpec, XorShift64Star, generate
from .harness import ExponentFit, InequalityRecord, check_certified, fit_exponent, measure_asymptotic
from .search import SearchConfig, SearchResult, score, search_extremal
from .setops import (
    difference_set,
    iterated_product,
    iterated_sumset,
    product_set,
    ratio_set,
    shift_ratio_set,
    sumset,
)

__all__ = [
    "CertificationError", "ExponentFit", "FamilySpec", "InequalityRecord", "InputError",
    "MultiplicityTable", "NumSet", "ResourceCapError", "SearchConfig", "SearchResult",
    "SumProdError", "XorShift64Star", "additive_energy", "affine_image", "build_set",
    "check_certified", "collinear_energy", "difference_set", "fit_exponent", "format_scalar",
    "generate", "heavy_ratio_set", "iterated_product", "iterated_sumset", "measure_asymptotic",
    "options", "paper_threshold", "parse_scalar", "product_set", "quad_count", "quad_slice",
    "ratio_set", "rep_table", "score", "search_extremal", "set_union", "shift_ratio_set",
    "sigma", "sumset", "verify_basic_identity",
]
