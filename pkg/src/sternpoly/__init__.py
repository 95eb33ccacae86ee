"""Exact arithmetic for Type 1 Stern polynomials and the structures built on
them: the limit series along the convergent index sequence, the generalized
continued fractions for its ratios, and the 2x2 matrix system coming from the
functional equation.  Every identity the package states about these objects
is machine-checked by the `verify` suites."""

from .contfrac import (
    CFTerm,
    ConvergentPair,
    DegreeLedger,
    cf_terms,
    convergents,
    degree_ledger,
    eval_cf_at_rational,
    regular_cf_transform,
    verify_cf1,
    verify_degree_ledger,
    verify_regular_transform,
)
from .errors import (
    AlphaOutOfRange,
    CapExceeded,
    DivisionByZero,
    InternalInvariant,
    InvalidParameter,
    NonConvergence,
    PrecisionTooLow,
    SternError,
)
from .mahler import (
    GMatrix,
    SpectralFit,
    a_matrix_pole_check,
    b_matrix,
    det_check,
    g_at_one,
    g_at_one_spectral,
    g_constant_terms,
    g_nonvanishing,
    g_product,
    g_recur,
    verify_g_construction,
)
from .poly import DEFAULT_TERM_CAP, SparsePoly, get_term_cap, set_term_cap
from .report import CheckItem, CheckReport, decimal_str, parse_rational, rational_str
from .series import (
    RationalInterval,
    TruncatedSeries,
    agreement_degree,
    eval_series_certified,
    h_series,
    verify_agreement_monotone,
    verify_functional_equation,
    verify_mat_system,
)
from .stern import (
    AlphaIndex,
    Params,
    alpha,
    closed_form_2k,
    closed_form_2k_minus_1,
    stern_poly,
    stern_value_at_one,
    verify_three_term,
)

__version__ = "0.1.0"

__all__ = [
    "AlphaIndex",
    "AlphaOutOfRange",
    "CFTerm",
    "CapExceeded",
    "CheckItem",
    "CheckReport",
    "ConvergentPair",
    "DEFAULT_TERM_CAP",
    "DegreeLedger",
    "DivisionByZero",
    "GMatrix",
    "InternalInvariant",
    "InvalidParameter",
    "NonConvergence",
    "Params",
    "PrecisionTooLow",
    "RationalInterval",
    "SparsePoly",
    "SpectralFit",
    "SternError",
    "TruncatedSeries",
    "a_matrix_pole_check",
    "agreement_degree",
    "alpha",
    "b_matrix",
    "cf_terms",
    "closed_form_2k",
    "closed_form_2k_minus_1",
    "convergents",
    "decimal_str",
    "degree_ledger",
    "det_check",
    "eval_cf_at_rational",
    "eval_series_certified",
    "g_at_one",
    "g_at_one_spectral",
    "g_constant_terms",
    "g_nonvanishing",
    "g_product",
    "g_recur",
    "get_term_cap",
    "h_series",
    "parse_rational",
    "rational_str",
    "regular_cf_transform",
    "set_term_cap",
    "stern_poly",
    "stern_value_at_one",
    "verify_agreement_monotone",
    "verify_cf1",
    "verify_degree_ledger",
    "verify_functional_equation",
    "verify_g_construction",
    "verify_mat_system",
    "verify_regular_transform",
    "verify_three_term",
]
