"""Generalized stable laws G(m, alpha): the density solutions of I^alpha f = x^m f.

Modules:

* ``specfun``: log-Gamma, digamma, Bessel, double Gamma and Kratzel functions;
* ``mellin``: Mellin transform ``M(s) = E[X^-s]`` by several routes, moments,
  asymptotic constant, Levy exponent and related quantities;
* ``density``: density evaluation (closed forms, series, Mellin inversion),
  asymptotics, Laplace transforms and Fox-function parameters;
* ``sampling``: Beta-product and exact special-case samplers;
* ``fracops``: Riemann-Liouville integrals, residual checks, Thorin densities;
* ``cli``: the ``genstable`` command.
"""

__version__ = "0.1.0"

from .errors import AccuracyError, DomainError, GenStableError, PreconditionError, RangeError
from .params import EXISTENCE_MESSAGE, GenStableParams
from .specfun import BesselQuery, DoubleGammaArgs, bessel, digamma_trigamma, kratzel, log_double_gamma, log_gamma
from .mellin import (
    MellinValue,
    asymptotic_constant,
    labr_selfdecomp_criterion,
    levy_exponent,
    mellin,
    moment_growth_sequence,
    moment_lattice,
)
from .density import (
    DensityEvaluation,
    FoxParams,
    asymptotic_infinity,
    asymptotic_zero,
    density,
    density_mellin_inversion,
    density_reflected,
    density_series,
    density_values,
    fox_log_mellin,
    fox_parameters,
    laplace_transform,
    laplace_transform_eval,
    log_small_ball_probability,
    series_families,
    small_ball_estimate,
    zero_exponent_point,
)
from .sampling import SampleBatch, SampleConfig, factorization_check, sample, sample_special
from .fracops import (
    QuadratureSpec,
    ResidualReport,
    ThorinPoint,
    completely_monotone_spot_check,
    default_convention,
    ide_residual,
    rl_integral,
    steutel_residual,
    stieltjes_check,
    thorin_density_frechet,
    thorin_kernel,
)

__all__ = [name for name in dir() if not name.startswith("_")]
