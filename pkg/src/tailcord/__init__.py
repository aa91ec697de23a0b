"""Concomitant maxima of bivariate samples under extremal dependence."""
from .errors import (ConditioningError, DomainError, EstimationError, InvalidModelError,
                     PrecisionError, QuadratureError, TailcordError, UnsupportedFamilyError,
                     ValidationError)
from .models import Family, ModelSpec, Scale, TailSummary, tail_summary, marginal_transform
from .quadrature import QuadratureConfig, Substitution
from .sampler import BivariateBatch, SeedSpec, sample_model, sample_positive_stable, \
    sample_tail_conditioned_gaussian
from .concomitants import (ConcomitantSplit, ReplicateRecord, concomitant_order, run_replicates,
                           split_maxima, split_maxima_many)
from .asymptotics import (H1, H2, F2_limit, F3_limit, LimitSurface, finite_sample_cdf,
                          joint_limit_cdf, limit_surface)
from .gaussian_norming import (NormingConstants, gaussian_conditional_tail_limit, mills_approx,
                               norming_constants, validate_gaussian_limit, wt_kappa, wt_L1)
from .empirics import ValidationReport, ecdf_bivariate, lambda_u_hat, validate_against_limit

__version__ = "0.1.0"
