"""Explicit optimizer of the three-lines variational problem on a strip,
with controlled-precision evaluation of the optimal value and the resulting
upper bounds on the CLR and LT constants."""

from .constants import (
    BoundsReport,
    PhysicalQuery,
    bounds_report,
    c_d_sigma,
    clr_asymptotic,
    clr_factor,
    clr_factor_at,
    lt_asymptotic,
    lt_factor,
    lt_factor_at,
    m_gamma,
    scaling_constant,
)
from .errors import (
    ConditioningWarning,
    DomainError,
    InvalidEnvelopeError,
    NonFiniteError,
    PhaseNotRealError,
    PoleHitError,
    SharpConstantsError,
)
from .optimizer import (
    OptimizerNorms,
    beta_constant,
    blaschke,
    blaschke_abs_sq,
    f_gamma,
    h_eval,
    l2_norm_sq_line,
    optimizer_norms,
    primal_norms,
    sup_norm_interior,
)
from .phase import (
    GammaParam,
    PhaseValue,
    StripPoint,
    g_gamma,
    g_inf,
    im_kernel,
    im_theta,
    re_kernel,
    re_theta,
    re_theta_inf_line,
    theta,
)
from .quadrature import (
    DecayEnvelope,
    IntegralResult,
    QuadSpec,
    integrate_even_line,
    integrate_finite,
    integrate_semi_infinite,
)
from .verify import (
    VerificationReport,
    duality_gap,
    el_residual,
    lorentzian_upper,
    low_gamma_diagnostic,
    run_verification,
    trial_lower,
)

__version__ = "0.1.0"
