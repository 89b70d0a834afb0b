"""Gravitational lensing by eigenvalue densities of unitary matrix ensembles.

The library solves the complex lens equation conj(w) = conj(z) - m omega(z)
for mass distributions whose unit measure is an eigenvalue density on real
cuts: closed forms for the semicircle and quartic families, a seeded
numeric solver for everything else, arrival-time differences, edge-on
galaxy profiles and elliptic mother-body verifications.
"""

from .delays import (
    DelayReport,
    delay_report,
    equilibrium_spread,
    log_potential,
    relative_delay_two_cut,
    time_delay,
)
from .errors import BranchCutError, ConfigError, DomainError, LensError, NumericError
from .gaussian import (
    GaussianParams,
    bright_images_gaussian,
    count_regions_half,
    curve_beta_at_alpha,
    dim_images_gaussian,
    discriminant_half,
    gaussian_model,
    images_gaussian,
    joukowski,
    joukowski_inverse,
)
from .imageset import Image, ImageSet
from .motherbody import (
    Ellipse,
    QuarticBodyCoeffs,
    elliptic_uniform_cauchy,
    gaussian_mother_quadrature_error,
    quartic_body_coeffs,
    quartic_body_density,
    schwarz,
    verify_gaussian_mother_body,
    verify_quartic_mother_body,
)
from .profiles import (
    GalaxyProfile,
    PhysicalConfig,
    ScalingRecord,
    galaxy_profile,
    physical_to_dimensionless,
)
from .quartic import (
    ImageCatalog,
    PhaseScan,
    QuarticParams,
    T_PHASE,
    images_origin,
    images_origin_one_cut,
    images_origin_two_cut,
    images_quartic,
    phase_transition_scan,
    quartic_model,
    t_dim_threshold,
)
from .solver import SolverConfig, bright_images_numeric, dim_images, residual
from .spectral import (
    DensitySample,
    LensModel,
    Potential,
    SpectralPolynomial,
    SupportCuts,
    boundary_values,
    branch_sqrt_P,
    cauchy_transform,
    check_normalization,
    density_samples,
    eval_density,
    generic_model,
)

__version__ = "0.1.0"
