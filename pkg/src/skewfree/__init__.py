"""skewfree: exact freeness analysis in twisted polynomial rings over Q[x,y].

Decides, certifies, or refutes freeness of two-generator graded subalgebras
k{a t^p, b t^p} of R[t;sigma] for R = Q[x,y] or Q[x^-1,y^-1], with exact
arithmetic throughout: rank computations over Q, eigenvalues in quadratic
fields, and verified relation witnesses.
"""

from .autom import (Automorphism, IntMat2, Kind, apply, compose,
                    elementary_autom, henon_autom, monomial_autom,
                    parse_automorphism, power)
from .caps import ResourceCapError
from .exactnum import QuadExt, Rat, as_rat, quad_abs_geq, quad_sign
from .freeness import (DoublingResult, FreenessReport, check_free,
                       component_dimension, degree_doubling_certificate,
                       find_relation, verify_relation)
from .growth import (GkEstimate, GrowthSeries, filtration_dims, gk_estimate,
                     graded_dims)
from .monomial_analysis import (CatalogRelation, CertificateResult,
                                ClassificationReport, Valuation,
                                catalog_relations, classify, eigen_data,
                                exp_set_dimension, parity_obstruction,
                                spectral_radius, valuation_certificate,
                                word_exponents)
from .ring import (Mode, Poly, WeightedDegree, parse_poly, poly_add, poly_mul,
                   substitute, weighted_degree)
from .skew import (Letter, Relation, SkewPoly, Word, conjugate_map,
                   expand_word, gauge_map, parse_relation, parse_word,
                   skew_mul)

__version__ = "1.0.0"

__all__ = [
    "Automorphism", "IntMat2", "Kind", "apply", "compose", "elementary_autom",
    "henon_autom", "monomial_autom", "parse_automorphism", "power",
    "ResourceCapError",
    "QuadExt", "Rat", "as_rat", "quad_abs_geq", "quad_sign",
    "DoublingResult", "FreenessReport", "check_free", "component_dimension",
    "degree_doubling_certificate", "find_relation", "verify_relation",
    "GkEstimate", "GrowthSeries", "filtration_dims", "gk_estimate", "graded_dims",
    "CatalogRelation", "CertificateResult", "ClassificationReport", "Valuation",
    "catalog_relations", "classify", "eigen_data", "exp_set_dimension",
    "parity_obstruction", "spectral_radius", "valuation_certificate",
    "word_exponents",
    "Mode", "Poly", "WeightedDegree", "parse_poly", "poly_add", "poly_mul",
    "substitute", "weighted_degree",
    "Letter", "Relation", "SkewPoly", "Word", "conjugate_map", "expand_word",
    "gauge_map", "parse_relation", "parse_word", "skew_mul",
    "__version__",
]
