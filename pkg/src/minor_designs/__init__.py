"""Combinatorial designs from principal minors of structured matrices.

Exact arithmetic over Q(zeta_12), exhaustive minor enumeration, design
verification and coefficient-based parameter prediction.
"""
__version__ = "0.1.0"

from .coefficients import coeff_by_class, coeff_constancy, coeff_of
from .constructions import FAMILIES, FamilySpec, construct
from .designs import (
    BlockSet,
    DesignReport,
    extract_blocks,
    five_subset_property,
    render_parameters,
    verify_pbibd,
    verify_regular_pbd,
    verify_t_design,
)
from .errors import MinorDesignsError
from .identities import identity_checks
from .matrix import ExactMatrix, charpoly, det
from .minors import MinorSpectrum, minor_spectrum
from .predictor import (
    check_des_hypotheses,
    closed_form,
    predict_lambda,
    predict_pbibd,
    predict_pbibd_three,
    reconcile,
)
from .scalar import Scalar, parse_scalar, render_scalar
from .schemes import AssociationScheme, scheme_catalog, validate_scheme

__all__ = [
    "AssociationScheme",
    "BlockSet",
    "DesignReport",
    "ExactMatrix",
    "FAMILIES",
    "FamilySpec",
    "MinorDesignsError",
    "MinorSpectrum",
    "Scalar",
    "charpoly",
    "check_des_hypotheses",
    "closed_form",
    "coeff_by_class",
    "coeff_constancy",
    "coeff_of",
    "construct",
    "det",
    "extract_blocks",
    "five_subset_property",
    "identity_checks",
    "minor_spectrum",
    "parse_scalar",
    "predict_lambda",
    "predict_pbibd",
    "predict_pbibd_three",
    "reconcile",
    "render_parameters",
    "render_scalar",
    "scheme_catalog",
    "validate_scheme",
    "verify_pbibd",
    "verify_regular_pbd",
    "verify_t_design",
]
