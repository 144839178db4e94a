"""Estimators of (alpha, gamma) for the Linnik law.

Three procedures are provided:

* ``estimate_mom`` -- method of moments on log|x|, with asymptotic
  normal confidence intervals;
* ``estimate_frac_moment`` -- matches two fractional absolute moments
  E|L|^q1, E|L|^q2 by solving a 2x2 nonlinear system;
* ``estimate_charfn`` -- regression of log(1/|psi_hat| - 1) on log|lambda|
  using the empirical characteristic function at fixed points lambda_j.
"""

from __future__ import annotations

import json
import math
import warnings
from dataclasses import asdict, dataclass, field
from enum import Enum
from typing import Optional, Sequence

import numpy as np
from scipy.special import ndtri

from .distribution import LinnikParams, frac_moment_coefficient
from .errors import (
    ChfOutOfRange,
    DegenerateLambdas,
    InvalidConfig,
    InvalidParams,
    LinnikError,
    NotPSDWarning,
    SolverFailed,
    TooFewObservations,
    VarianceTooSmall,
    ZeroObservation,
)
from .numerics import EULER_GAMMA, PI, solve_1d, solve_2d
from .sampling import Sample

PI2_OVER_12 = PI ** 2 / 12.0


class Method(str, Enum):
    MOM = "MoM"
    FRAC = "FracMoment"
    CHARFN = "CharFn"


@dataclass
class EstimateResult:
    alpha_hat: float
    gamma_hat: float
    method: Method
    n: int
    stderr_alpha: Optional[float] = None
    stderr_gamma: Optional[float] = None
    ci_alpha: Optional[tuple[float, float]] = None
    ci_gamma: Optional[tuple[float, float]] = None
    epsilon: Optional[float] = None
    diagnostics: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["method"] = Method(self.method).value
        for key in ("ci_alpha", "ci_gamma"):
            if d[key] is not None:
                d[key] = list(d[key])
        return d

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)

    @classmethod
    def from_dict(cls, d: dict) -> "EstimateResult":
        d = dict(d)
        d["method"] = Method(d["method"])
        for key in ("ci_alpha", "ci_gamma"):
            if d.get(key) is not None:
                d[key] = tuple(d[key])
        return cls(**d)


@dataclass(frozen=True)
class EmpiricalLogMoments:
    mean_hat: float
    var_hat: float
    n: int


def _values(sample) -> np.ndarray:
    vals = sample.values if isinstance(sample, Sample) else np.asarray(sample, dtype=float).ravel()
    return vals


def _check_nonzero(x):
    zeros = np.flatnonzero(x == 0.0)
    if zeros.size:
        raise ZeroObservation(int(zeros[0]))


def normal_quantile(p: float) -> float:
    """Standard normal quantile."""
    return float(ndtri(p))


def _attach_ci(result: EstimateResult, epsilon: float) -> EstimateResult:
    if not (0.0 < epsilon < 1.0):
        raise InvalidConfig(f"epsilon must lie in (0,1), got {epsilon}")
    z = normal_quantile(1.0 - epsilon / 2.0)
    result.epsilon = epsilon
    if result.stderr_alpha is not None:
        half = z * result.stderr_alpha
        result.ci_alpha = (result.alpha_hat - half, result.alpha_hat + half)
    if result.stderr_gamma is not None:
        half = z * result.stderr_gamma
        result.ci_gamma = (result.gamma_hat - half, result.gamma_hat + half)
    return result


# --------------------------------------------------------------------------
# Log-moment estimator
# --------------------------------------------------------------------------

def empirical_log_moments(sample, ddof: int = 0) -> EmpiricalLogMoments:
    """Mean and variance of log|x|; the variance divisor is n - ddof (n by default)."""
    x = _values(sample)
    if x.size < 2:
        raise TooFewObservations(f"need at least 2 observations, got {x.size}")
    _check_nonzero(x)
    logs = np.log(np.abs(x))
    mean = float(np.mean(logs))
    var = float(np.sum((logs - mean) ** 2) / (x.size - ddof))
    return EmpiricalLogMoments(mean, var, int(x.size))


def mom_asymptotic_variances(params: LinnikParams) -> tuple[float, float]:
    """Asymptotic variances of sqrt(n)(alpha_hat - alpha) and sqrt(n)(gamma_hat - gamma)."""
    if not isinstance(params, LinnikParams):
        raise InvalidParams("params must be LinnikParams")
    return _mom_variances(params.alpha, params.gamma)


def _mom_variances(a, g):
    a2 = a * a
    var_alpha = a2 * (13.0 * a2 * a2 + 20.0 * a2 + 64.0) / 80.0
    var_gamma = PI ** 2 * g * g * (a2 + 4.0) / (12.0 * a2)
    return var_alpha, var_gamma


def mom_from_log_moments(mean_hat: float, var_hat: float, n: int,
                         epsilon: Optional[float] = None) -> EstimateResult:
    """Invert the log-moment equations; the CI half-widths use the plug-in
    asymptotic variances at the estimates."""
    excess = var_hat - PI2_OVER_12
    if not excess > 0.0:
        raise VarianceTooSmall(
            f"variance of log|x| is {var_hat:.6g}, not above pi^2/12 = {PI2_OVER_12:.6g}"
        )
    alpha = PI / math.sqrt(3.0 * excess)
    gamma = math.exp(mean_hat + EULER_GAMMA)
    va, vg = _mom_variances(alpha, gamma)
    res = EstimateResult(
        alpha, gamma, Method.MOM, n,
        stderr_alpha=math.sqrt(va / n), stderr_gamma=math.sqrt(vg / n),
    )
    if alpha > 2.0:
        res.diagnostics["alpha_above_2"] = True
    if epsilon is not None:
        _attach_ci(res, epsilon)
    return res


def estimate_mom(sample, epsilon: Optional[float] = None, ddof: int = 0) -> EstimateResult:
    """Method-of-moments estimate from the mean and variance of log|x|.

    alpha_hat = pi / sqrt(3 (s2 - pi^2/12)) and gamma_hat = exp(m + Euler gamma).
    Estimates above 2 are returned as is and flagged in ``diagnostics``.
    ``ddof=1`` switches s2 to the unbiased sample variance.
    """
    m = empirical_log_moments(sample, ddof)
    return mom_from_log_moments(m.mean_hat, m.var_hat, m.n, epsilon)


# --------------------------------------------------------------------------
# Fractional-moment estimator
# --------------------------------------------------------------------------

ALPHA_MAX_FRAC = 2.5


@dataclass(frozen=True)
class FracMomentConfig:
    q1: float = 0.5
    q2: float = 1.0

    def __post_init__(self):
        if not (0.0 < self.q1 < self.q2):
            raise InvalidConfig(f"need 0 < q1 < q2, got q1={self.q1}, q2={self.q2}")
        if self.q2 >= ALPHA_MAX_FRAC:
            raise InvalidConfig(f"q2 must be below {ALPHA_MAX_FRAC}")


def frac_moment_from_moments(m1: float, m2: float, config: FracMomentConfig = FracMomentConfig(),
                             n: int = 0, start: Optional[tuple[float, float]] = None,
                             tol: float = 1e-12) -> EstimateResult:
    """Solve gamma^qj * c(alpha, qj) = mj, j = 1, 2, for (alpha, gamma).

    Damped Newton in (log alpha, log gamma) first; if that fails, the system
    is reduced to one equation in alpha (gamma eliminated) and bracketed.
    """
    q1, q2 = config.q1, config.q2
    if not (m1 > 0 and m2 > 0 and math.isfinite(m1) and math.isfinite(m2)):
        raise SolverFailed(f"fractional moments must be positive and finite, got {m1}, {m2}")
    lm1, lm2 = math.log(m1), math.log(m2)
    a_lo = q2 + 1e-6

    def log_coef(a, q):
        c = frac_moment_coefficient(a, q)
        return math.log(c) if c > 0 else math.nan

    def system(p):
        a, g = p
        lg = math.log(g)
        return (log_coef(a, q1) + q1 * lg - lm1, log_coef(a, q2) + q2 * lg - lm2)

    if start is None:
        start = (1.5, math.exp(lm2 / q2))
    a0 = min(max(start[0], a_lo), ALPHA_MAX_FRAC)
    diagnostics = {}
    try:
        (alpha, gamma), iters = solve_2d(
            system, (a0, start[1]), bounds=((a_lo, ALPHA_MAX_FRAC), (1e-300, 1e300)),
            tol=tol, log_space=True, full_output=True,
        )
        diagnostics.update(solver="newton-2d", iterations=iters)
    except LinnikError as exc:
        def profile(a):
            return (lm1 - log_coef(a, q1)) / q1 - (lm2 - log_coef(a, q2)) / q2
        try:
            alpha = solve_1d(profile, (a_lo, ALPHA_MAX_FRAC), tol=1e-14)
        except (LinnikError, ValueError) as exc1:
            raise SolverFailed(
                f"no root with alpha in ({q2}, {ALPHA_MAX_FRAC}]: {exc1}"
            ) from exc
        gamma = math.exp((lm1 - log_coef(alpha, q1)) / q1)
        diagnostics.update(solver="profile-1d", newton_failure=type(exc).__name__)
    if alpha > 2.0:
        diagnostics["alpha_above_2"] = True
    return EstimateResult(alpha, gamma, Method.FRAC, n, diagnostics=diagnostics)


def estimate_frac_moment(sample, config: FracMomentConfig = FracMomentConfig()) -> EstimateResult:
    """Fractional-moment estimate with q = (q1, q2).

    The solution is sought with alpha in (q2, 2.5]; the MoM estimate serves as
    the starting point when it exists.
    """
    x = _values(sample)
    if x.size < 2:
        raise TooFewObservations(f"need at least 2 observations, got {x.size}")
    _check_nonzero(x)
    ax = np.abs(x)
    m1 = float(np.mean(ax ** config.q1))
    m2 = float(np.mean(ax ** config.q2))
    try:
        start = estimate_mom(x)
        start = (start.alpha_hat, start.gamma_hat)
    except VarianceTooSmall:
        start = (1.5, math.exp(float(np.mean(np.log(ax))) + EULER_GAMMA))
    return frac_moment_from_moments(m1, m2, config, n=int(x.size), start=start)


# --------------------------------------------------------------------------
# Characteristic-function estimator
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class CharFnConfig:
    lambdas: tuple
    c: float
    u: tuple


def charfn_config(lambdas: Sequence[float] = (0.001, 0.1)) -> CharFnConfig:
    """Regression weights u_i = (log|l_i| - c) / sum_j (log|l_j| - c)^2."""
    lam = np.asarray(lambdas, dtype=float).ravel()
    if lam.size < 2:
        raise InvalidConfig("need at least two lambda values")
    if np.any(lam == 0.0) or not np.all(np.isfinite(lam)):
        raise InvalidConfig("lambda values must be finite and nonzero")
    logs = np.log(np.abs(lam))
    c = float(np.mean(logs))
    centred = logs - c
    ss = float(np.sum(centred ** 2))
    if ss == 0.0:
        raise DegenerateLambdas("all |lambda| are equal; the slope is not identified")
    return CharFnConfig(tuple(float(v) for v in lam), c, tuple(float(v) for v in centred / ss))


def _log_odds_from_modulus(modulus, one_minus):
    """log(1/|psi| - 1), given |psi| and 1 - |psi| computed separately."""
    return np.log(one_minus) - np.log(modulus)


def empirical_chf_terms(x: np.ndarray, lambdas) -> tuple[np.ndarray, np.ndarray]:
    """Return (|psi_hat(l)|, 1 - |psi_hat(l)|) for each l.

    1 - |psi_hat| is formed from mean(1 - cos) and mean(sin) without the
    cancellation of subtracting |psi_hat| from 1.
    """
    mods = np.empty(len(lambdas))
    gaps = np.empty(len(lambdas))
    for k, lam in enumerate(lambdas):
        t = lam * x
        a = float(np.mean(2.0 * np.sin(0.5 * t) ** 2))
        s = float(np.mean(np.sin(t)))
        one_minus_sq = 2.0 * a - a * a - s * s
        mod = math.sqrt(max((1.0 - a) ** 2 + s * s, 0.0))
        mods[k] = mod
        gaps[k] = one_minus_sq / (1.0 + mod)
    return mods, gaps


def charfn_from_log_odds(log_odds: np.ndarray, config: CharFnConfig, n: int = 0,
                         epsilon: Optional[float] = None) -> EstimateResult:
    """Point estimates from y_j = log(1/|psi(l_j)| - 1) = alpha (log gamma + log|l_j|)."""
    u = np.asarray(config.u)
    alpha = float(np.dot(u, log_odds))
    if not alpha > 0.0:
        raise ChfOutOfRange(f"slope estimate {alpha:.6g} is not positive")
    b = len(config.lambdas)
    gamma = math.exp(float(np.sum(log_odds)) / (b * alpha) - config.c)
    res = EstimateResult(alpha, gamma, Method.CHARFN, n)
    if alpha > 2.0:
        res.diagnostics["alpha_above_2"] = True
    if epsilon is not None and n > 0:
        cov = _charfn_cov(alpha, gamma, config)
        if np.all(np.isfinite(cov)) and cov[0, 0] >= 0 and cov[1, 1] >= 0:
            res.stderr_alpha = math.sqrt(cov[0, 0] / n)
            res.stderr_gamma = math.sqrt(cov[1, 1] / n)
        else:
            res.diagnostics["covariance_unavailable"] = True
        _attach_ci(res, epsilon)
    return res


def estimate_charfn(sample, config: Optional[CharFnConfig] = None,
                    epsilon: Optional[float] = None) -> EstimateResult:
    """Characteristic-function estimate at the points ``config.lambdas``.

    Raises ChfOutOfRange when any |psi_hat(l_j)| is 0 or not below 1.
    """
    if config is None:
        config = charfn_config()
    x = _values(sample)
    if x.size < 1:
        raise TooFewObservations("empty sample")
    mods, gaps = empirical_chf_terms(x, config.lambdas)
    bad = (mods <= 0.0) | (gaps <= 0.0)
    if np.any(bad):
        k = int(np.flatnonzero(bad)[0])
        raise ChfOutOfRange(
            f"|psi_hat({config.lambdas[k]})| = {mods[k]!r} is outside (0, 1)"
        )
    return charfn_from_log_odds(_log_odds_from_modulus(mods, gaps), config, int(x.size), epsilon)


def _charfn_cov(alpha, gamma, config):
    lam = np.asarray(config.lambdas)
    u = np.asarray(config.u)
    b = lam.size

    def psi(t):
        return 1.0 / (1.0 + np.abs(gamma * t) ** alpha)

    p = psi(lam)
    w = p ** -2 / np.abs(gamma * lam) ** alpha
    wij = 0.5 * (psi(lam[:, None] + lam[None, :]) + psi(lam[:, None] - lam[None, :])
                 - 2.0 * p[:, None] * p[None, :])
    W = w[:, None] * w[None, :] * wij
    v = 1.0 / b - u * (config.c + math.log(gamma))
    k = gamma / alpha
    cov = np.empty((2, 2))
    cov[0, 0] = u @ W @ u
    cov[0, 1] = cov[1, 0] = k * (v @ W @ u)
    cov[1, 1] = k * k * (v @ W @ v)
    return cov


def charfn_asymptotic_cov(params: LinnikParams, config: CharFnConfig) -> np.ndarray:
    """Asymptotic covariance of sqrt(n)(alpha_hat - alpha, gamma_hat - gamma)
    for the characteristic-function estimator.

    Emits NotPSDWarning, without altering the matrix, when it has an
    eigenvalue below -1e-10 (relative to its scale).
    """
    if not isinstance(params, LinnikParams):
        raise InvalidParams("params must be LinnikParams")
    cov = _charfn_cov(params.alpha, params.gamma, config)
    scale = max(1.0, float(np.max(np.abs(cov))))
    if np.min(np.linalg.eigvalsh(cov)) < -1e-10 * scale:
        warnings.warn(f"covariance is not positive semidefinite: {cov.tolist()}", NotPSDWarning)
    return cov
