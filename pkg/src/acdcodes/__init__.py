"""Additive complementary dual codes over F2^alpha x F4^beta."""

from .code_model import (
    AdditiveCode,
    CodeType,
    EnumerationCapExceeded,
    code_from_rows,
    compute_type,
    puncture_x,
    puncture_y,
    standard_form,
)
from .duality import AcdCertificate, dual_code, gram_matrix, hull, inner_product4, is_acd
from .field_core import MixedWord
from .metrics_search import DistanceReport, SearchSpec, best_known_lookup, min_distance, search
from .wmap import WImage, is_image_lcd, w_map_code, w_map_word

__all__ = [
    "AcdCertificate",
    "AdditiveCode",
    "CodeType",
    "DistanceReport",
    "EnumerationCapExceeded",
    "MixedWord",
    "SearchSpec",
    "WImage",
    "best_known_lookup",
    "code_from_rows",
    "compute_type",
    "dual_code",
    "gram_matrix",
    "hull",
    "inner_product4",
    "is_acd",
    "is_image_lcd",
    "min_distance",
    "puncture_x",
    "puncture_y",
    "search",
    "standard_form",
    "w_map_code",
    "w_map_word",
]
