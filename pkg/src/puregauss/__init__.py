"""Geometric entanglement of pure multimode Gaussian states.

Covariance matrices follow the xpxp ordering with the vacuum equal to the
identity matrix.
"""
from .errors import (
    ConstraintViolationError,
    DecompositionError,
    DomainError,
    InvalidDimensionError,
    InvalidIndexError,
    InvalidParameterError,
    PureGaussError,
    PurityError,
    StateFileError,
)
from .geometry import (
    DistanceResult,
    closed_form_distance,
    determinant_identity,
    distance_functional,
    extremal_op,
    fidelity_pure,
    is_product_across_cut,
    local_mixedness,
    minimize_distance,
    optimal_op,
)
from .measures import (
    MeasureReport,
    gaussian_tangle,
    linear_entropy,
    measure_report,
    von_neumann_entropy,
)
from .states import (
    CovarianceMatrix,
    SchmidtForm,
    Validity,
    WilliamsonDecomposition,
    apply_symplectic,
    make_bisymmetric_three_mode,
    make_random_pure,
    make_schmidt_state,
    make_two_mode_squeezed,
    make_vacuum,
    reduce,
    schmidt_form,
    symplectic_spectrum,
    validate,
    williamson,
)
from .symplectic import (
    GENERATORS,
    EulerAngles,
    GeneratorBasis,
    SingleModeOp,
    SymplecticForm,
    SymplecticMatrix,
    direct_sum,
    embed_on_mode,
    euler_compose,
    is_symplectic,
    make_single_mode_op,
    make_symplectic_form,
    single_mode_op_to_euler,
)

__version__ = "0.1.0"
