"""Linnik L(alpha, gamma) distribution: evaluation, sampling and estimation."""

from .distribution import (
    LinnikParams,
    LogMomentTheory,
    cdf,
    chf,
    fractional_moment,
    log_moment_theory,
    pdf,
    stable_log_moments,
)
from .estimators import (
    CharFnConfig,
    EstimateResult,
    FracMomentConfig,
    Method,
    charfn_asymptotic_cov,
    charfn_config,
    empirical_log_moments,
    estimate_charfn,
    estimate_frac_moment,
    estimate_mom,
    mom_asymptotic_variances,
)
from .montecarlo import ExperimentConfig, ExperimentReport, coverage_check, run_cell, run_table
from .sampling import (
    RngStream,
    Sample,
    read_sample,
    sample_exponential,
    sample_laplace,
    sample_linnik,
    sample_symmetric_stable,
    write_sample,
)

__version__ = "0.1.0"
