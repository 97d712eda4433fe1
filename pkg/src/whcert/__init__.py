"""whcert: certified stable Wiener-Hopf factorisation of strictly
nonsingular 2x2 matrix functions over the Gaussian rationals.

The pipeline: reduce (or supply) a canonical matrix function built from a
plus-analytic and a minus-analytic coefficient stream, truncate it to a
Laurent matrix polynomial, factorise the truncation exactly over Q(i),
normalise the factors, and certify q_N < 1 with one-sided rational bounds.
A certified q_N < 1 at a stable truncation proves the full matrix function
admits a stable factorisation with the same partial indices, and the
factor-accuracy module turns the same data into guaranteed error bounds for
the approximate factors.
"""

from .accuracy import (
    AccuracyReport,
    cor51_bounds,
    general_canonical_bounds,
    odd_theta_accuracy,
    perturbed_inverse_bound,
)
from .criterion import (
    CriterionReport,
    certify_stability,
    first_certified,
    q_n,
    sigma_of,
    write_criterion_csv,
)
from .errors import (
    InadmissibleZetaError,
    InconsistentScalarDataError,
    NonConstantDeterminantError,
    NonExactDivisionError,
    NormalisationUnavailableError,
    NotMonomialDetError,
    VerificationFailedError,
    WhcertError,
)
from .exactmath import (
    DEFAULT_TOL,
    GaussianRational,
    UpperBound,
    abs_upper,
    as_fraction,
    exp_upper,
    fraction_str,
    sqrt_lower,
    sqrt_upper,
)
from .factorise import (
    Factorisation,
    KernelSlice,
    VerificationReport,
    index_dimension_profile,
    is_stable,
    kernel_slice,
    right_factorise,
    verify_factorisation,
)
from .families import (
    ExampleFamily,
    ex61_family,
    ex62_family,
    ex63_family,
    factor_coefficient_check,
    family_from_spec,
)
from .harness import accuracy_for_report, reproduce
from .laurent import (
    LaurentMatrix2,
    LaurentScalar,
    NormBound,
    det2,
    identity2,
    invert_unimodular,
    lmp_from_json,
    lmp_to_json,
    matrix_from_entries,
    monomial,
    monomial_winding,
    one_scalar,
    value_at_infinity,
    wiener_norm_upper,
    zero_scalar,
)
from .normalise import LUPair, ambiguity_twist, lu_decompose, p_normalise
from .reduction import (
    ReductionResult,
    ScalarFactorisationData,
    recompose_indices,
    reduce_to_a_form,
    stable_pattern,
)
from .tailbounds import (
    BoundContext,
    CoefficientStream,
    GridSpec,
    StreamPair,
    delta_n,
    optimize_zeta,
    tail_norm_bounds,
    truncate,
    truncation_distance,
)

__version__ = "0.1.0"
