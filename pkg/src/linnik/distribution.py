"""The symmetric Linnik law L(alpha, gamma).

Characteristic function ``(1 + |gamma*lambda|**alpha) ** -1``. At alpha = 2 this
is the Laplace law with scale gamma and the closed forms are used directly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidParams, MomentDoesNotExist
from .numerics import EULER_GAMMA, PI, ZETA3, QuadratureSpec, gamma_function, integrate_semi_infinite

# Relative accuracy governs: tail values far below any fixed absolute
# tolerance are still returned to about 8 significant digits.
DEFAULT_QUADRATURE = QuadratureSpec(abs_tolerance=1e-300, rel_tolerance=1e-8)


@dataclass(frozen=True)
class LinnikParams:
    alpha: float
    gamma: float = 1.0

    def __post_init__(self):
        if not (0.0 < self.alpha <= 2.0):
            raise InvalidParams(f"alpha must be in (0,2], got {self.alpha}")
        if not (self.gamma > 0.0 and math.isfinite(self.gamma)):
            raise InvalidParams(f"gamma must be positive and finite, got {self.gamma}")


@dataclass(frozen=True)
class LogMomentTheory:
    """Population moments of log|L|."""

    mean_logabs: float
    var_logabs: float
    mu3: float
    mu4: float


def _check(params):
    if not isinstance(params, LinnikParams):
        raise InvalidParams(f"expected LinnikParams, got {type(params).__name__}")
    return params


def chf(params: LinnikParams, lam):
    """Characteristic function at ``lam`` (scalar or array)."""
    _check(params)
    out = 1.0 / (1.0 + np.abs(params.gamma * np.asarray(lam, dtype=float)) ** params.alpha)
    return float(out) if out.ndim == 0 else out


# Both real-line integrals are taken in v = |log y|. With y = e^(+-v) the
# kernel y^a / (y^2a + 2 y^a cos(a pi/2) + 1) becomes
#     K(v) = 1 / (4 sinh(a v / 2)^2 + 4 delta^2),  delta = sin((2 - a) pi / 4),
# which is even in log y, has no cancellation, and keeps full relative
# precision at its peak v = 0 even when alpha is within rounding of 2
# (2 - alpha is exact in floating point, unlike cos(alpha pi / 4)).

def _kernel(v, alpha, delta):
    sh = np.sinh(0.5 * alpha * v)
    return 1.0 / (4.0 * (sh * sh + delta * delta))


def _folded_integral(weight, x, alpha, spec):
    """int_0^inf K(v) [weight(v) + weight(-v)] dv, with the weight a function of log y."""
    eps = 2.0 - alpha
    delta = math.sin(eps * PI / 4)

    def integrand(v):
        with np.errstate(over="ignore", under="ignore", invalid="ignore"):
            return _kernel(v, alpha, delta) * (weight(v) + weight(-v))

    # The weight switches off near v = |log x|, where the integrand can peak
    # after growing exponentially; evenly spaced breakpoints up to there stop
    # a single wide Gauss-Kronrod panel from missing that growth.
    edge = abs(math.log(x))
    steps = math.ceil(edge / 8.0)
    breaks = (1.0,) + tuple(edge * k / steps for k in range(1, steps + 1))
    return math.sin(eps * PI / 2) / PI * integrate_semi_infinite(integrand, spec, breaks)


def _standard_pdf(x, alpha, spec):
    """Density of L(alpha, 1) at x >= 0, alpha < 2."""
    if x == 0.0:
        if alpha <= 1.0:
            return math.inf
        # closed form of the integral at x = 0: (1/pi) * int (1 + t^a)^-1 dt
        return 1.0 / (alpha * math.sin(PI / alpha))
    # dy = y du, so the weight is y exp(-x y) with y = e^u
    return _folded_integral(lambda u: np.exp(u - x * np.exp(u)), x, alpha, spec)


def _standard_upper_tail(x, alpha, spec):
    """P(L > x) for L ~ L(alpha, 1), x > 0, alpha < 2."""
    return _folded_integral(lambda u: np.exp(-x * np.exp(u)), x, alpha, spec)


def _map_scalar(fn, x):
    arr = np.asarray(x, dtype=float)
    if arr.ndim == 0:
        return fn(float(arr))
    return np.array([fn(float(v)) for v in arr.ravel()]).reshape(arr.shape)


def pdf(params: LinnikParams, x, spec: QuadratureSpec = DEFAULT_QUADRATURE):
    """Density at ``x``.

    Returns ``inf`` at x = 0 when alpha <= 1, where the density is unbounded.
    """
    _check(params)
    a, g = params.alpha, params.gamma

    def one(v):
        z = abs(v) / g
        if a == 2.0:
            return 0.5 * math.exp(-z) / g
        return _standard_pdf(z, a, spec) / g

    return _map_scalar(one, x)


def cdf(params: LinnikParams, x, spec: QuadratureSpec = DEFAULT_QUADRATURE):
    """Distribution function at ``x``."""
    _check(params)
    a, g = params.alpha, params.gamma

    def one(v):
        if v == 0.0:
            return 0.5
        z = abs(v) / g
        tail = 0.5 * math.exp(-z) if a == 2.0 else _standard_upper_tail(z, a, spec)
        return 1.0 - tail if v > 0 else tail

    return _map_scalar(one, x)


def frac_moment_coefficient(alpha: float, q: float) -> float:
    """E|L|^q / gamma^q, i.e. the fractional moment at unit scale."""
    if q == 1.0:
        return 2.0 / (alpha * math.sin(PI / alpha))
    return PI * q / (alpha * math.sin(PI * q / alpha) * math.cos(PI * q / 2)
                     * gamma_function(1.0 - q))


def fractional_moment(params: LinnikParams, q: float) -> float:
    """E|L|^q, finite for 0 < q < alpha."""
    _check(params)
    if not (0.0 < q < params.alpha):
        raise MomentDoesNotExist(f"E|L|^q requires 0 < q < alpha={params.alpha}, got q={q}")
    return params.gamma ** q * frac_moment_coefficient(params.alpha, q)


def log_moment_theory(params: LinnikParams) -> LogMomentTheory:
    _check(params)
    a2 = params.alpha ** 2
    return LogMomentTheory(
        mean_logabs=math.log(params.gamma) - EULER_GAMMA,
        var_logabs=PI ** 2 * (a2 + 4.0) / (12.0 * a2),
        mu3=-2.0 * ZETA3,
        mu4=PI ** 4 * (19.0 * a2 * a2 + 40.0 * a2 + 112.0) / (240.0 * a2 * a2),
    )


def stable_log_moments(alpha: float) -> tuple[float, float, float, float]:
    """Raw moments E[(log|S|)^k], k = 1..4, of the symmetric stable law
    with characteristic function exp(-|lambda|^alpha)."""
    if not (0.0 < alpha <= 2.0):
        raise InvalidParams(f"alpha must be in (0,2], got {alpha}")
    C, z3, p2 = EULER_GAMMA, ZETA3, PI ** 2
    a = alpha
    am1 = a - 1.0
    quad = a * a + 2.0
    m1 = C * (1.0 / a - 1.0)
    m2 = (12.0 * C ** 2 * am1 ** 2 + quad * p2) / (12.0 * a ** 2)
    m3 = (1.0 - a) * (4.0 * am1 ** 2 * C ** 3 + quad * C * p2
                      + 8.0 * (a * a + a + 1.0) * z3) / (4.0 * a ** 3)
    m4 = (240.0 * am1 ** 4 * C ** 4
          + 120.0 * am1 ** 2 * quad * C ** 2 * p2
          + (19.0 * a ** 4 + 20.0 * a ** 2 + 36.0) * p2 ** 2
          + 1920.0 * am1 ** 2 * (a * a + a + 1.0) * C * z3) / (240.0 * a ** 4)
    return m1, m2, m3, m4
