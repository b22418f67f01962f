"""dops: exact-arithmetic construction and verification of d-orthogonal
polynomial families.

The package builds each family twice (band recurrence and generating
function), fits recurrence tables, inverts for dual-functional moments, and
machine-verifies the full identity catalog as exact polynomial identities
over the rationals.
"""

from .families import (
    FamilyParamError,
    HypParams,
    LagParams,
    MLParams,
    hyp_laguerre,
    hyp_quasi,
    laguerre_q_sequence,
    laguerre_type_by_gf,
    laguerre_type_by_recurrence,
    ml_by_gf,
    ml_by_recurrence,
    ml_q_sequence,
    terminating_pfq,
)
from .identities import (
    VerificationReport,
    Witness,
    ratio_power_closed_form,
    verify_de,
    verify_hyp_lincomb,
    verify_laguerre_structure,
    verify_moment_recursion,
    verify_nccd,
    verify_sr2_general,
    verify_sr_block,
    verify_sz4,
    verify_sz5,
)
from .orthogonality import (
    FitError,
    MomentTable,
    RecurrenceTable,
    check_regularity,
    expand_in_basis,
    fit_recurrence,
    moments_by_inversion,
    quasi_orthogonality_order,
    verify_d_orthogonality,
)
from .polynomials import (
    ExactRational,
    Poly,
    as_rational,
    delta_w,
    derivative,
    falling_factorial,
    format_rational,
    parse_rational,
    poly_arith,
    rising_factorial,
    shift,
)
from .series import (
    Series,
    egf_extract,
    gf_binomial_xw,
    gf_ratio_power,
    normalize_exponent,
    series_exp,
    series_log,
    series_log1p_scaled,
    series_mul,
)

__version__ = "0.1.0"
