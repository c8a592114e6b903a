"""remezkit: Remez-type bounds over sampling sets in the unit ball.

Covering profiles and the entropy quantity omega_d, Chebyshev/Remez growth
factors, smooth-function bounds with automatic degree selection, extension
derivative lower bounds, and LP-based brute-force oracles that certify all
of it.
"""

from .entropy import (
    CoveringProfile,
    OmegaEstimate,
    VitushkinParams,
    covering_number_1d,
    covering_number_box,
    covering_profile_1d,
    curve_omega_lower,
    omega_closed_form,
    omega_d,
    omega_from_profile,
    omega_lower_from_measure,
    vitushkin_Md,
)
from .errors import (
    DescriptorError,
    InputError,
    LpFailureError,
    NumericalError,
    RemezkitError,
    UnsupportedDescriptorError,
    UnsupportedDimensionError,
)
from .oracle import (
    IntervalUnion,
    Polynomial,
    best_approx_upper,
    covering_number_intervals,
    lp_max_at_point,
    max_abs_on_grid,
    poly_derivative_norm,
    remez_constant_exact,
    sublevel_intervals,
)
from .remez_bounds import (
    RemezConstant,
    chebyshev_T,
    chebyshev_T_log10,
    q_of_set,
    remez_constant_upper,
    remez_factor_1d,
    remez_factor_nd,
)
from .set_models import (
    Curve,
    FinitePoints,
    GeometricSequence,
    MeasurableBody,
    Point,
    PowerSequence,
    RegularGrid,
    SetDescriptor,
    geometric_points,
    grid_points,
    materialize,
    parse_descriptor,
    power_sequence_points,
    serialize_descriptor,
)
from .smooth_bounds import (
    BoundReport,
    SmoothFnSpec,
    curve_smooth_bound,
    entropy_remez_provider,
    fixed_degree_bound,
    general_bound,
    select_d0,
    smooth_remez,
    taylor_remainder,
    taylor_remez,
    whitney_lower,
)

__version__ = "0.1.0"

__all__ = [
    "BoundReport",
    "CoveringProfile",
    "Curve",
    "DescriptorError",
    "FinitePoints",
    "GeometricSequence",
    "InputError",
    "IntervalUnion",
    "LpFailureError",
    "MeasurableBody",
    "NumericalError",
    "OmegaEstimate",
    "Point",
    "Polynomial",
    "PowerSequence",
    "RegularGrid",
    "RemezConstant",
    "RemezkitError",
    "SetDescriptor",
    "SmoothFnSpec",
    "UnsupportedDescriptorError",
    "UnsupportedDimensionError",
    "VitushkinParams",
    "best_approx_upper",
    "chebyshev_T",
    "chebyshev_T_log10",
    "covering_number_1d",
    "covering_number_box",
    "covering_number_intervals",
    "covering_profile_1d",
    "curve_omega_lower",
    "curve_smooth_bound",
    "entropy_remez_provider",
    "fixed_degree_bound",
    "general_bound",
    "geometric_points",
    "grid_points",
    "lp_max_at_point",
    "materialize",
    "max_abs_on_grid",
    "omega_closed_form",
    "omega_d",
    "omega_from_profile",
    "omega_lower_from_measure",
    "parse_descriptor",
    "poly_derivative_norm",
    "power_sequence_points",
    "q_of_set",
    "remez_constant_exact",
    "remez_constant_upper",
    "remez_factor_1d",
    "remez_factor_nd",
    "select_d0",
    "serialize_descriptor",
    "smooth_remez",
    "sublevel_intervals",
    "taylor_remainder",
    "taylor_remez",
    "vitushkin_Md",
    "whitney_lower",
]
