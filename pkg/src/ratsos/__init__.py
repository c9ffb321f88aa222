"""Exact sums-of-squares certificates over number fields and over Q.

Submodules: numberfield (fields and trace forms), polyring (sparse forms,
norm forms), certificate (SOS / difference-of-squares / PSD checks),
descent (from totally real K to Q), counterexample (norm forms that are not
SOS over Q), denominator (rational denominators for them) and cli.
"""

from .certificate import (
    DiffOfSquaresWitness,
    PSDReport,
    SOSCertificate,
    psd_check,
    quadratic_to_sos,
    sos_over_R_evidence,
    to_pure,
    verify_diff_identity,
    verify_sos,
)
from .counterexample import (
    EvidenceBundle,
    FactorPattern,
    build_norm_form,
    certify_not_sos,
    condition_star_check,
    factor_degree_pattern,
    general_position_check,
    search_field,
    search_level2_field,
    two_transitivity_evidence,
    vanishing_dimension,
)
from .denominator import (
    DenominatorCertificate,
    IsotropicVector,
    build_denominator,
    find_isotropic,
    minimality_report,
    square_count_note,
    trace_quotient_form,
)
from .descent import (
    DescentResult,
    FourSquare,
    descend_quadratic_module,
    descend_sos,
    euler_compose,
    four_square_decompose,
    square_count_bound,
)
from .errors import RatSOSError
from .numberfield import (
    FieldElement,
    NumberField,
    diagonalize_trace_form,
    embedding_signs,
    make_field,
    norm,
    trace,
)
from .polyring import SparsePoly, exact_divide, norm_form, parse_poly, trace_poly, vandermonde_form

__version__ = "0.1.0"
