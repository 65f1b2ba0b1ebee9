"""Eigenvalue lower bounds for the Dirichlet Laplacian and the clamped plate.

The package evaluates every implemented bound family with a per-term
breakdown, computes independent reference spectra for canonical domains,
numerically certifies the polynomial proof kernels and moment lemmas, and
runs verification campaigns that compare bounds against oracles and persist
machine-readable reports.
"""

from .band import (
    BandData,
    band_from_a,
    band_power,
    cap_coefficient,
    kvw_epsilon,
    normalized_mass,
    solve_band_parameter,
)
from .clamped_bounds import (
    cheng_wei_sum,
    cheng_wei_upper,
    gamma_k_lower,
    jixu_clamped_sum,
    levine_protter_sum,
    yy_tse_sum,
)
from .config import (
    FAMILY_REGISTRY,
    MUST_HOLD_FAMILIES,
    CampaignConfig,
    FamilyRequest,
    LabeledDomain,
    config_from_dict,
    load_config,
)
from .errors import (
    BandInfeasible,
    BracketError,
    BudgetError,
    ConfigError,
    ConstraintError,
    DomainError,
    MissingInertiaError,
)
from .evaluation import BoundEvaluation
from .geometry import (
    Abstract,
    Ball,
    Box,
    DomainSpec,
    SpectralConstants,
    domain_constants,
    inertia_floor,
    rho_floor,
    unit_ball_volume,
)
from .kernels import (
    kernel_residual,
    kernel_scan,
    kernel_validity_table,
    leading_term_dominates,
)
from .laplace_bounds import (
    jixu_gmt_sum,
    jixu_mt_sum,
    jixu_n2_sum,
    kvw_sum,
    lambda_k_lower,
    li_yau_sum,
    melas_sum,
    polya_reference,
)
from .profiles import (
    FuzzResult,
    Profile,
    fuzz_lemma,
    lemma_chain_check,
    profile_moments,
    sample_admissible_profile,
)
from .report import emit_report, render_figures
from .spectra import (
    Spectrum,
    ball_spectrum,
    beam_frequencies,
    beam_spectrum,
    bessel_j,
    bessel_zero,
    box_spectrum,
    fd_clamped_square,
    weyl_reference,
)
from .verify import (
    ComparisonTable,
    VerificationRecord,
    compare_families,
    must_hold_violations,
    run_verification,
)

__version__ = "0.1.0"
