"""l1-recovery thresholds, Gaussian widths, and phase diagrams for
compressed sensing with Gaussian measurement matrices."""

from .scalars import (
    DomainError,
    erf,
    erfinv,
    inv_cdf_abs,
    inv_cdf_gauss,
    inv_cdf_signed_sq,
    inv_cdf_sq,
    quad_tail_moment,
    tail_m1_abs,
    tail_m1_gauss,
    tail_m2_abs,
    tail_m2_signed,
)
from .thresholds import (
    CurvePoint,
    NoRootError,
    SolverConfig,
    ThresholdKind,
    alpha_bound,
    beta_max,
    curve,
    invert_alpha,
    solve_theta,
    theta_residual,
)
from .width import (
    CMode,
    ScenarioVector,
    WidthReport,
    dual_width_bound,
    primal_width_oracle,
    scenario_vector,
    select_c_exact,
    width_monte_carlo,
)
from .lp import (
    KERNEL_NAME,
    LinearProgram,
    LpNumericalError,
    LpSolution,
    LpStatus,
    solve_lp,
    vertex_enumerate_oracle,
)
from .recovery import (
    InfeasibleSystemError,
    Instance,
    PhaseCell,
    gaussian_instance,
    l1_solve,
    nonneg_l1_solve,
    nsp_check_fixed_support,
    nsp_check_strong,
    nsp_fixed_support_detail,
    nsp_strong_detail,
    phase_diagram,
    read_matrix_file,
    recovery_success,
)

__version__ = "0.1.0"

__all__ = [
    "DomainError", "erf", "erfinv", "inv_cdf_abs", "inv_cdf_gauss",
    "inv_cdf_signed_sq", "inv_cdf_sq", "quad_tail_moment", "tail_m1_abs",
    "tail_m1_gauss", "tail_m2_abs", "tail_m2_signed",
    "CurvePoint", "NoRootError", "SolverConfig", "ThresholdKind",
    "alpha_bound", "beta_max", "curve", "invert_alpha", "solve_theta",
    "theta_residual",
    "CMode", "ScenarioVector", "WidthReport", "dual_width_bound",
    "primal_width_oracle", "scenario_vector", "select_c_exact",
    "width_monte_carlo",
    "KERNEL_NAME", "LinearProgram", "LpNumericalError", "LpSolution",
    "LpStatus", "solve_lp", "vertex_enumerate_oracle",
    "InfeasibleSystemError", "Instance", "PhaseCell", "gaussian_instance",
    "l1_solve", "nonneg_l1_solve", "nsp_check_fixed_support",
    "nsp_check_strong", "nsp_fixed_support_detail", "nsp_strong_detail",
    "phase_diagram", "read_matrix_file", "recovery_success",
    "__version__",
]
