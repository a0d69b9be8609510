"""Diffusion on the line with a feedback-throttled point source.

The package splits into layers: special-function kernels, Laplace-transform
machinery (contour and real-axis inversion), the delay equation behind the
sampled feedback loop, transfer functions and their time-domain responses,
boundary-trace solvers, a direct grid solver, and a parameter-plane sign
survey. The command line front end lives in :mod:`pointfeedback.cli`.
"""

from .boundary import (
    BoundaryTrace,
    ForcingSpec,
    InitialCondition,
    boundary_values,
    f0_trace,
    f0_transform,
    forcing_limit,
    forcing_transform,
    forcing_values,
    free_boundary_sum,
    initial_l2_norm,
    initial_mass,
    initial_values,
    resolvent_u_plus,
    solve_u_plus_renewal,
    steady_state_deficit,
    steady_state_value,
    u_minus_trace,
)
from .dde import (
    DdeProblem,
    DdeSolution,
    MonotoneReport,
    characteristic_root,
    classify_behavior,
    diblik_monotone_check,
    eta_series,
    lambert_w,
    solve_euler,
    solve_series,
    solve_steps,
)
from .errors import (
    ConfigError,
    ContourBelowPole,
    Instability,
    NoConvergence,
    NonConvergence,
    Overflow,
    PointFeedbackError,
    PoleHit,
    PrecisionLoss,
    QuadratureFailure,
    RootNotFound,
    SolverFailure,
    TailNotBounded,
)
from .kernels import (
    dirichlet_halfline_kernel,
    erf,
    erfc,
    heat_kernel,
    subordination_kernel,
    unit_step,
)
from .laplace import (
    BromwichConfig,
    SDomainFunction,
    TimeFunction,
    bromwich_invert,
    cauchy_derivative,
    final_value,
    forward_laplace,
    post_widder_invert,
    suggest_horizon,
)
from .pde import PdeConfig, PdeRun, PdeState
from .survey import RegionPoint, SurveyConfig, SurveyResult, classify_point, run_survey
from .transfer import (
    FeedbackParams,
    PoleSet,
    SubordinationConfig,
    critical_amplitude,
    critical_curve_value,
    default_contour,
    delayed_response,
    delayed_transfer,
    feedback_response_bromwich,
    feedback_response_grid,
    feedback_response_subordinate,
    feedback_transfer,
    heat_kernel_transform,
    left_sample_response,
    pole_set,
    right_sample_response,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # errors
    "PointFeedbackError",
    "ConfigError",
    "ContourBelowPole",
    "PrecisionLoss",
    "NoConvergence",
    "NonConvergence",
    "Overflow",
    "RootNotFound",
    "PoleHit",
    "TailNotBounded",
    "QuadratureFailure",
    "Instability",
    "SolverFailure",
    # kernels
    "erf",
    "erfc",
    "heat_kernel",
    "subordination_kernel",
    "dirichlet_halfline_kernel",
    "unit_step",
    # laplace
    "TimeFunction",
    "SDomainFunction",
    "BromwichConfig",
    "forward_laplace",
    "bromwich_invert",
    "cauchy_derivative",
    "post_widder_invert",
    "final_value",
    "suggest_horizon",
    # dde
    "DdeProblem",
    "DdeSolution",
    "MonotoneReport",
    "eta_series",
    "solve_steps",
    "solve_series",
    "solve_euler",
    "lambert_w",
    "characteristic_root",
    "classify_behavior",
    "diblik_monotone_check",
    # transfer
    "FeedbackParams",
    "PoleSet",
    "SubordinationConfig",
    "heat_kernel_transform",
    "feedback_transfer",
    "delayed_transfer",
    "delayed_response",
    "feedback_response_subordinate",
    "feedback_response_bromwich",
    "feedback_response_grid",
    "pole_set",
    "default_contour",
    "critical_amplitude",
    "critical_curve_value",
    "left_sample_response",
    "right_sample_response",
    # boundary
    "ForcingSpec",
    "InitialCondition",
    "BoundaryTrace",
    "forcing_values",
    "forcing_transform",
    "forcing_limit",
    "initial_values",
    "initial_mass",
    "initial_l2_norm",
    "free_boundary_sum",
    "u_minus_trace",
    "f0_trace",
    "f0_transform",
    "solve_u_plus_renewal",
    "resolvent_u_plus",
    "boundary_values",
    "steady_state_value",
    "steady_state_deficit",
    # pde
    "PdeConfig",
    "PdeState",
    "PdeRun",
    # survey
    "SurveyConfig",
    "RegionPoint",
    "SurveyResult",
    "classify_point",
    "run_survey",
]
