"""Numerical kernels: semi-infinite quadrature, root finding, Γ.

Everything here is a pure function of its arguments.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from scipy import optimize

from .errors import InvalidInput, NoSignChange, NonConvergence, OutOfDomain, PoleError

EULER_GAMMA = 0.5772156649015328606065
ZETA3 = 1.2020569031595942853997
PI = math.pi


@dataclass(frozen=True)
class Constants:
    euler_gamma: float = EULER_GAMMA
    zeta3: float = ZETA3
    pi: float = PI


CONSTANTS = Constants()


@dataclass(frozen=True)
class QuadratureSpec:
    abs_tolerance: float = 1e-10
    rel_tolerance: float = 1e-8
    max_subdivisions: int = 2000

    def __post_init__(self):
        if not (self.abs_tolerance > 0 and self.rel_tolerance > 0):
            raise InvalidInput("quadrature tolerances must be strictly positive")
        if self.max_subdivisions < 1:
            raise InvalidInput("max_subdivisions must be >= 1")


# Gauss-Kronrod 7/15 rule on [-1, 1] (nodes listed from the outside in).
_XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])

GK_NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])
GK_KRONROD_WEIGHTS = np.concatenate([_WGK[:-1], _WGK[::-1]])
# Gauss weights placed on the odd Kronrod slots, zero elsewhere.
GK_GAUSS_WEIGHTS = np.zeros(15)
GK_GAUSS_WEIGHTS[1::2] = np.concatenate([_WG[:-1], _WG[::-1]])


def _gk15(g, a, b):
    half = 0.5 * (b - a)
    mid = 0.5 * (a + b)
    vals = g(mid + half * GK_NODES)
    kronrod = half * float(GK_KRONROD_WEIGHTS @ vals)
    gauss = half * float(GK_GAUSS_WEIGHTS @ vals)
    return kronrod, abs(kronrod - gauss)


def integrate_interval(g, a, b, spec=QuadratureSpec(), breakpoints=()):
    """Globally adaptive Gauss-Kronrod integration of a vectorised `g` over [a, b].

    The interval with the largest error estimate is bisected until the summed
    error estimate falls below ``max(abs_tolerance, rel_tolerance * |I|)``.
    """
    edges = sorted({a, b, *[p for p in breakpoints if a < p < b]})
    heap = []
    total = 0.0
    total_err = 0.0
    for lo, hi in zip(edges[:-1], edges[1:]):
        val, err = _gk15(g, lo, hi)
        heapq.heappush(heap, (-err, lo, hi, val))
        total += val
        total_err += err
    n_intervals = len(heap)
    while total_err > max(spec.abs_tolerance, spec.rel_tolerance * abs(total)):
        if not math.isfinite(total) or not math.isfinite(total_err):
            raise NonConvergence("integrand produced non-finite values")
        if n_intervals >= spec.max_subdivisions:
            raise NonConvergence(
                f"error estimate {total_err:.3g} above tolerance after "
                f"{n_intervals} subintervals"
            )
        neg_err, lo, hi, val = heapq.heappop(heap)
        mid = 0.5 * (lo + hi)
        if not lo < mid < hi:
            raise NonConvergence("subinterval collapsed below machine resolution")
        left, left_err = _gk15(g, lo, mid)
        right, right_err = _gk15(g, mid, hi)
        total += left + right - val
        total_err += left_err + right_err + neg_err
        heapq.heappush(heap, (-left_err, lo, mid, left))
        heapq.heappush(heap, (-right_err, mid, hi, right))
        n_intervals += 1
    # Re-sum to shed the drift accumulated by incremental updates.
    return math.fsum(item[3] for item in heap)


def integrate_semi_infinite(f: Callable, spec: QuadratureSpec = QuadratureSpec(),
                            breakpoints: Sequence[float] = ()) -> float:
    """Integrate a vectorised ``f`` over (0, ∞).

    Maps y = t/(1-t) onto (0, 1) and adapts there. ``breakpoints`` are points
    in y (e.g. the location of a sharp peak) that seed the subdivision, so the
    adaptive pass never has to discover them.
    """
    def g(t):
        one_minus = 1.0 - t
        y = t / one_minus
        return f(y) / (one_minus * one_minus)

    tbreaks = [p / (1.0 + p) for p in breakpoints if 0 < p < math.inf]
    return integrate_interval(g, 0.0, 1.0, spec, tbreaks)


# Lanczos approximation, g = 7, n = 9.
_LANCZOS_G = 7
_LANCZOS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)


def gamma_function(x: float) -> float:
    """Γ(x) for real x, via Lanczos with the reflection formula for x < 1/2."""
    if x <= 0 and x == math.floor(x):
        raise PoleError(f"gamma has a pole at {x}")
    if x < 0.5:
        return PI / (math.sin(PI * x) * gamma_function(1.0 - x))
    x -= 1.0
    acc = _LANCZOS[0]
    for i, c in enumerate(_LANCZOS[1:], start=1):
        acc += c / (x + i)
    t = x + _LANCZOS_G + 0.5
    return math.sqrt(2 * PI) * t ** (x + 0.5) * math.exp(-t) * acc


def solve_1d(f: Callable[[float], float], bracket: tuple[float, float],
             tol: float = 1e-12) -> float:
    """Root of ``f`` inside ``bracket`` by Brent's method.

    Raises NoSignChange when ``f`` has the same sign at both ends.
    """
    a, b = bracket
    fa, fb = f(a), f(b)
    if fa == 0:
        return a
    if fb == 0:
        return b
    if np.sign(fa) == np.sign(fb):
        raise NoSignChange(f"f({a})={fa:.6g} and f({b})={fb:.6g} share a sign")
    return optimize.brentq(f, a, b, xtol=tol, rtol=4 * np.finfo(float).eps, maxiter=500)


def _fd_jacobian(F, x, fx):
    jac = np.empty((2, 2))
    for k in range(2):
        h = 1e-7 * max(1.0, abs(x[k]))
        xp = x.copy()
        xp[k] += h
        jac[:, k] = (np.asarray(F(xp), dtype=float) - fx) / h
    return jac


def _finish(x, log_space, iterations, full_output):
    root = np.exp(x) if log_space else x
    root = (float(root[0]), float(root[1]))
    return (root, iterations) if full_output else root


def solve_2d(F: Callable, start: tuple[float, float],
             bounds: tuple[tuple[float, float], tuple[float, float]] = ((-np.inf, np.inf), (-np.inf, np.inf)),
             tol: float = 1e-10, max_iter: int = 200, log_space: bool = False,
             full_output: bool = False):
    """Damped Newton for F(x, y) = 0 with a forward-difference Jacobian.

    Iterates are projected into ``bounds``. With ``log_space=True`` the
    iteration runs on (log x, log y), which needs strictly positive bounds and
    start; the returned root is in the original coordinates.

    Returns the root ``(x, y)``; with ``full_output`` also the number of
    Newton iterations taken.
    """
    lo = np.array([bounds[0][0], bounds[1][0]], dtype=float)
    hi = np.array([bounds[0][1], bounds[1][1]], dtype=float)
    x = np.clip(np.asarray(start, dtype=float), lo, hi)
    if log_space:
        if np.any(lo < 0) or np.any(x <= 0):
            raise OutOfDomain("log-space solve requires positive bounds and start")
        with np.errstate(divide="ignore"):
            lo, hi = np.log(lo), np.log(hi)
        x = np.log(x)
        G = lambda z: np.asarray(F(np.exp(z)), dtype=float)  # noqa: E731
    else:
        G = lambda z: np.asarray(F(z), dtype=float)  # noqa: E731

    fx = G(x)
    if not np.all(np.isfinite(fx)):
        raise OutOfDomain(f"F is not finite at the start point {start}")
    norm = np.max(np.abs(fx))
    for it in range(max_iter):
        if norm <= tol:
            return _finish(x, log_space, it, full_output)
        jac = _fd_jacobian(G, x, fx)
        try:
            step = np.linalg.solve(jac, -fx)
        except np.linalg.LinAlgError:
            step = np.linalg.lstsq(jac, -fx, rcond=None)[0]
        damping = 1.0
        for _ in range(40):
            trial = np.clip(x + damping * step, lo, hi)
            ft = G(trial)
            if np.all(np.isfinite(ft)) and np.max(np.abs(ft)) < norm:
                break
            damping *= 0.5
        else:
            raise NonConvergence(f"line search stalled at iteration {it}, |F|={norm:.3g}")
        x, fx, norm = trial, ft, float(np.max(np.abs(ft)))
    if norm <= tol:
        return _finish(x, log_space, max_iter, full_output)
    raise NonConvergence(f"no convergence in {max_iter} iterations, |F|={norm:.3g}")
