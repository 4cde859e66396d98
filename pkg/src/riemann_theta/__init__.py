"""Riemann theta functions with characteristics and derivatives, for small genus."""
from .bounds import ErrorBoundParams, error_bound, incomplete_gamma_upper, solve_radius
from .errors import (
    DegenerateBasis,
    DerivOrderExceeded,
    EllipsoidTooLarge,
    InvalidRadius,
    NoConvergence,
    NotPositiveDefinite,
    NumericalFailure,
    ReductionStalled,
    SingularTransform,
    ThetaError,
    UnsupportedArgument,
)
from .lattice import (
    EllipsoidCache,
    cholesky_upper,
    enumerate_deformed_ellipsoid,
    hkz_reduce,
    lll_reduce,
    shortest_vector,
)
from .schottky import (
    ThetaNullReport,
    even_theta_constants,
    find_theta_null,
    hessian_at_null,
    numerical_rank,
    schottky_null,
)
from .siegel import apply_symplectic, is_symplectic, random_siegel, siegel_reduce
from .theta import (
    Characteristic,
    DerivativeSpec,
    RiemannContext,
    all_characteristics,
    build_context,
    even_characteristics,
    odd_characteristics,
    parity,
    reduce_argument,
    theta,
    theta_naive,
    theta_split,
)

__version__ = "0.1.0"
