"""Exact commutative algebra over F_p and Buchsbaum certificates for G(F)."""

from .certifier import (
    EQUALITY_FAILS,
    G_BUCHSBAUM,
    INCONCLUSIVE,
    INPUT_SANITY_FAIL,
    Certificate,
    CertifyConfig,
    certify_buchsbaum_G,
    check_intersection_condition,
    corso_boundary_check,
    equivalence_selftest,
    replay_certificate,
)
from .filtration import (
    Filtration,
    ReductionCertificate,
    adic,
    find_reduction,
    quotient_filtration,
    ratliff_rush,
    ratliff_rush_filtration,
    table,
    validate_goodness,
)
from .groebner import (
    GroebnerBasis,
    Ideal,
    artinian_length,
    groebner_basis,
    ideal_colon,
    ideal_intersection,
    ideal_saturation,
    krull_dimension,
    normal_form,
)
from .hilbert import fit_coefficients, hilbert_coefficients, hs_function, multiplicity_parameter
from .invariants import (
    bsb_invariant_of_G,
    invariant_of_sop,
    is_d_sequence,
    is_standard_sop,
    is_usd_sequence,
    is_weak_sequence,
    local_cohomology_lengths,
)
from .kernel import DEGREVLEX, FieldElem, MonomialOrder, PolyRing, Polynomial, elimination
from .quotient import IdealHandle, QuotientRing, h0_length, is_parameter_ideal, length
from .session import SessionError, format_session, parse_polynomial, parse_session

__version__ = "0.1.0"
