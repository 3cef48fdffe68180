"""Edgeworth expansions and Renyi entropy asymptotics along the CLT.

A library for the asymptotics of normalized i.i.d. sums
Z_n = (X_1 + ... + X_n)/sqrt(n):

* exact rational polynomial algebra and Chebyshev-Hermite polynomials
  (:mod:`renyi_clt.exactpoly`),
* moment/cumulant conversion via the partition formula
  (:mod:`renyi_clt.cumulants`),
* Edgeworth corrections of the normal density and distribution function
  (:mod:`renyi_clt.edgeworth`),
* closed-form integrals of polynomials against powers of the normal density
  (:mod:`renyi_clt.gaussint`),
* expansion coefficients for L^r norms, Renyi entropies and entropy powers,
  with eventual-monotonicity verdicts (:mod:`renyi_clt.expansion`),
* the sup-norm / N_infinity branch (:mod:`renyi_clt.maxdensity`),
* actual densities of Z_n by characteristic-function powering and Fourier
  inversion, with entropies computed on the resulting grids
  (:mod:`renyi_clt.numerics` and :mod:`renyi_clt.distributions`),
* a CLI harness tying predictions to measurements (:mod:`renyi_clt.harness`).
"""

from .cumulants import (
    CumulantVector,
    MomentVector,
    compositions,
    cumulants_from_moments,
    moments_from_cumulants,
    standard_cumulants,
)
from .distributions import (
    DistributionSpec,
    GaussianMixture,
    GridDensity,
    StandardizedGamma,
    TwoSidedExponential,
    Uniform,
    from_name,
)
from .edgeworth import (
    EdgeworthModel,
    LeadingTerm,
    cdf_correction_polynomial,
    correction_polynomial,
    leading_term,
    normal_cdf,
    normal_pdf,
    truncation_radius,
)
from .exactpoly import Poly, hermite
from .expansion import (
    DECREASING,
    INCREASING,
    INDETERMINATE,
    ExpansionCoefficients,
    TruncatedSeries,
    a1_closed_form,
    a2_from_integrals,
    a_coefficient,
    b_coefficient,
    entropy_expansion,
    gaussian_entropy_power,
    gaussian_renyi_entropy,
    kl_rate_coefficient,
    leading_entropy_coefficient,
    monotonicity_prediction,
    sign_change_threshold,
)
from .gaussint import (
    gauss_power_integral,
    gauss_power_mass,
    gauss_power_moment,
    hermite_integral,
)
from .maxdensity import (
    SupNormExpansion,
    extremum_series,
    monotonicity_prediction_inf,
    ninf_expansion,
    solve_extremum,
    supnorm_coefficients,
)
from .numerics import (
    DensityGrid,
    GridError,
    SmoothingResult,
    characteristic_power,
    density_of_normalized_sum,
    entropy_power,
    kl_to_gaussian,
    lr_integral,
    renyi_entropy,
    shannon_entropy,
    smoothing_diagnostic,
    sup_norm,
    tabulate_density,
)

__version__ = "0.1.0"
