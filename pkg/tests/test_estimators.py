import json
import math
import warnings

import mpmath
import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from linnik import estimators
from linnik.distribution import LinnikParams, chf, fractional_moment, log_moment_theory
from linnik.errors import (
    ChfOutOfRange,
    DegenerateLambdas,
    InvalidConfig,
    NotPSDWarning,
    SolverFailed,
    TooFewObservations,
    VarianceTooSmall,
    ZeroObservation,
)
from linnik.estimators import (
    EstimateResult,
    FracMomentConfig,
    Method,
    charfn_asymptotic_cov,
    charfn_config,
    charfn_from_log_odds,
    empirical_chf_terms,
    empirical_log_moments,
    estimate_charfn,
    estimate_frac_moment,
    estimate_mom,
    frac_moment_from_moments,
    mom_asymptotic_variances,
    mom_from_log_moments,
    normal_quantile,
)
from linnik.numerics import EULER_GAMMA
from linnik.sampling import RngStream, Sample, linnik_variates, sample_linnik

E = math.e


@pytest.mark.parametrize("values, mean, var", [
    ([E, E], 1.0, 0.0),
    ([1.0, E ** 2], 1.0, 1.0),
    ([-E, E], 1.0, 0.0),
])
def test_empirical_log_moments_examples(values, mean, var):
    m = empirical_log_moments(Sample(values))
    assert m.mean_hat == pytest.approx(mean, abs=1e-15)
    assert m.var_hat == pytest.approx(var, abs=1e-15)
    assert m.n == 2


def test_empirical_log_moments_ddof():
    assert empirical_log_moments([1.0, E ** 2], ddof=1).var_hat == pytest.approx(2.0)


def test_empirical_log_moments_errors():
    with pytest.raises(TooFewObservations):
        empirical_log_moments([1.0])
    with pytest.raises(ZeroObservation) as info:
        empirical_log_moments([1.0, 2.0, 0.0])
    assert info.value.index == 2


@pytest.mark.parametrize("alpha, gamma", [(2.0, 1.0), (1.0, 0.2), (0.1, 0.05), (1.75, 1e3)])
def test_mom_inverts_population_log_moments(alpha, gamma):
    th = log_moment_theory(LinnikParams(alpha, gamma))
    res = mom_from_log_moments(th.mean_logabs, th.var_logabs, 100)
    assert res.alpha_hat == pytest.approx(alpha, rel=1e-12)
    assert res.gamma_hat == pytest.approx(gamma, rel=1e-12)
    assert res.method is Method.MOM


def test_mom_interval_example():
    # alpha_hat = 1, gamma_hat = 0.2 at n = 1000
    th = log_moment_theory(LinnikParams(1.0, 0.2))
    res = mom_from_log_moments(th.mean_logabs, th.var_logabs, 1000, epsilon=0.05)
    assert np.round(res.ci_alpha, 3).tolist() == [0.932, 1.068]
    assert np.round(res.ci_gamma, 3).tolist() == [0.175, 0.225]
    assert res.epsilon == 0.05


def test_mom_hand_example():
    # logs {0, 2}: mean 1, divisor-n variance 1
    res = estimate_mom(Sample([1.0, E ** 2]))
    assert res.alpha_hat == pytest.approx(math.pi / math.sqrt(3 * (1 - math.pi ** 2 / 12)), rel=1e-14)
    assert res.alpha_hat == pytest.approx(4.30477, abs=1e-5)
    assert res.gamma_hat == pytest.approx(math.exp(1 + EULER_GAMMA), rel=1e-15)
    assert res.gamma_hat == pytest.approx(4.84146, abs=1e-5)
    assert res.diagnostics["alpha_above_2"] is True
    assert res.ci_alpha is None


def test_mom_errors():
    with pytest.raises(VarianceTooSmall):
        estimate_mom([3.0, 3.0, 3.0])
    with pytest.raises(ZeroObservation):
        estimate_mom([1.0, 0.0, 2.0])
    with pytest.raises(InvalidConfig):
        estimate_mom([1.0, 100.0], epsilon=1.5)


finite_samples = st.lists(st.floats(min_value=1e-6, max_value=1e6), min_size=3, max_size=40)


@settings(max_examples=100)
@given(finite_samples, st.lists(st.booleans(), min_size=40, max_size=40),
       st.floats(min_value=1e-3, max_value=1e3))
def test_mom_scale_equivariance(values, signs, c):
    x = np.array(values) * np.where(signs[:len(values)], 1.0, -1.0)
    try:
        base = estimate_mom(x)
    except VarianceTooSmall:
        return
    scaled = estimate_mom(c * x)
    assert scaled.alpha_hat == pytest.approx(base.alpha_hat, rel=1e-12)
    assert scaled.gamma_hat == pytest.approx(c * base.gamma_hat, rel=1e-12)


@settings(max_examples=50)
@given(st.floats(min_value=-5, max_value=5), st.floats(min_value=0.9, max_value=40),
       st.integers(min_value=2, max_value=10**6), st.floats(min_value=1e-4, max_value=0.5))
def test_mom_interval_is_symmetric(mean, var, n, eps):
    res = mom_from_log_moments(mean, var, n, epsilon=eps)
    for est, ci in ((res.alpha_hat, res.ci_alpha), (res.gamma_hat, res.ci_gamma)):
        assert 0.5 * (ci[0] + ci[1]) == pytest.approx(est, rel=1e-12)
    half = res.ci_alpha[1] - res.alpha_hat
    assert half == pytest.approx(normal_quantile(1 - eps / 2) * res.stderr_alpha, rel=1e-12)


def test_normal_quantile():
    assert normal_quantile(0.975) == pytest.approx(1.959963984540054, rel=1e-15)
    assert normal_quantile(0.5) == 0.0


@pytest.mark.parametrize("params, expected", [
    (LinnikParams(1.0), (97 / 80, None)),
    (LinnikParams(2.0, 1.0), (17.6, math.pi ** 2 / 6)),
])
def test_mom_asymptotic_variance_examples(params, expected):
    va, vg = mom_asymptotic_variances(params)
    assert va == pytest.approx(expected[0], rel=1e-15)
    if expected[1] is not None:
        assert vg == pytest.approx(expected[1], rel=1e-15)


@pytest.mark.parametrize("alpha", [0.3, 1.0, 1.7])
def test_mom_asymptotic_variance_by_delta_method(alpha):
    # Var of (alpha_hat, gamma_hat) from the delta method on (mean, var) of log|L|,
    # with Var(s^2) = mu4 - sigma^4 and Cov(mean, s^2) = mu3.
    g = 1.7
    th = log_moment_theory(LinnikParams(alpha, g))
    s2 = th.var_logabs
    cov = np.array([[s2, th.mu3], [th.mu3, th.mu4 - s2 ** 2]])
    # alpha = pi / sqrt(3 (s2 - pi^2/12)); gamma = exp(mean + C)
    da = -1.5 * math.pi * (3 * (s2 - math.pi ** 2 / 12)) ** -1.5
    ga = np.array([0.0, da])
    gg = np.array([g, 0.0])
    va, vg = mom_asymptotic_variances(LinnikParams(alpha, g))
    assert va == pytest.approx(ga @ cov @ ga, rel=1e-12)
    assert vg == pytest.approx(gg @ cov @ gg, rel=1e-12)


@pytest.mark.parametrize("alpha, gamma", [(1.5, 1.0), (2.0, 1.0), (1.2, 10.0), (1.9, 0.01)])
def test_frac_moment_population_fixed_point(alpha, gamma):
    p = LinnikParams(alpha, gamma)
    m1 = fractional_moment(p, 0.5)
    m2 = fractional_moment(p, 1.0)
    res = frac_moment_from_moments(m1, m2)
    assert res.alpha_hat == pytest.approx(alpha, abs=1e-8)
    assert res.gamma_hat == pytest.approx(gamma, rel=1e-8)
    assert res.method is Method.FRAC


def test_frac_moment_laplace_values():
    res = frac_moment_from_moments(math.sqrt(math.pi) / 2, 1.0)
    assert (res.alpha_hat, res.gamma_hat) == pytest.approx((2.0, 1.0), abs=1e-10)


def test_frac_moment_other_orders_and_fallback():
    p = LinnikParams(1.6, 3.0)
    cfg = FracMomentConfig(0.3, 0.9)
    m1, m2 = fractional_moment(p, 0.3), fractional_moment(p, 0.9)
    res = frac_moment_from_moments(m1, m2, cfg, start=(2.5, 1e-3))
    assert res.alpha_hat == pytest.approx(1.6, abs=1e-8)
    assert res.gamma_hat == pytest.approx(3.0, rel=1e-8)
    assert res.diagnostics["solver"] in ("newton-2d", "profile-1d")


def test_frac_moment_no_root():
    # m2 / m1^2 far larger than any alpha in range allows
    with pytest.raises(SolverFailed):
        frac_moment_from_moments(1.0, 1e6)
    with pytest.raises(SolverFailed):
        frac_moment_from_moments(-1.0, 1.0)


def test_frac_config_validation():
    with pytest.raises(InvalidConfig):
        FracMomentConfig(1.0, 0.5)
    with pytest.raises(InvalidConfig):
        FracMomentConfig(0.5, 2.5)


def test_frac_moment_on_sample():
    x = sample_linnik(RngStream(31), LinnikParams(1.5, 2.0), 10**5)
    res = estimate_frac_moment(x)
    assert res.alpha_hat == pytest.approx(1.5, abs=0.1)
    assert res.gamma_hat == pytest.approx(2.0, rel=0.1)
    assert res.n == 10**5
    assert res.ci_alpha is None


def test_charfn_config_examples():
    cfg = charfn_config((0.001, 0.1))
    assert cfg.c == pytest.approx(-4.60517, abs=1e-5)
    assert cfg.u == pytest.approx((-0.21715, 0.21715), abs=1e-5)
    assert float(np.dot(cfg.u, np.log(cfg.lambdas))) == pytest.approx(1.0, rel=1e-14)
    assert sum(cfg.u) == pytest.approx(0.0, abs=1e-15)
    cfg = charfn_config((0.5, 2.0))
    assert cfg.c == pytest.approx(0.0, abs=1e-15)
    assert cfg.u == pytest.approx((-0.72135, 0.72135), abs=1e-5)
    with pytest.raises(DegenerateLambdas):
        charfn_config((1.0, 1.0))
    with pytest.raises(DegenerateLambdas):
        charfn_config((-2.0, 2.0))
    with pytest.raises(InvalidConfig):
        charfn_config((0.0, 1.0))
    with pytest.raises(InvalidConfig):
        charfn_config((1.0,))


@settings(max_examples=50)
@given(st.lists(st.floats(min_value=1e-4, max_value=10.0), min_size=2, max_size=6))
def test_charfn_weights_sum(lams):
    logs = np.log(lams)
    assume(np.ptp(logs) > 1e-3)
    cfg = charfn_config(lams)
    assert sum(cfg.u) == pytest.approx(0.0, abs=1e-10)
    assert float(np.dot(cfg.u, logs)) == pytest.approx(1.0, rel=1e-10)


def exact_log_odds(params, cfg):
    psi = chf(params, np.array(cfg.lambdas))
    return np.log(1.0 / psi - 1.0)


@pytest.mark.parametrize("alpha, gamma, lams", [
    (1.5, 1.0, (0.001, 0.1)),
    (0.7, 1.0, (0.2, 0.5, 3.0)),
    (1.2, 10.0, (0.001, 0.1)),
    (2.0, 0.3, (0.5, 1.0)),
])
def test_charfn_exact_inputs(alpha, gamma, lams):
    cfg = charfn_config(lams)
    res = charfn_from_log_odds(exact_log_odds(LinnikParams(alpha, gamma), cfg), cfg)
    assert res.alpha_hat == pytest.approx(alpha, abs=1e-10)
    assert res.gamma_hat == pytest.approx(gamma, rel=1e-10)


def test_charfn_exact_log_odds_are_linear():
    cfg = charfn_config((0.001, 0.1))
    y = exact_log_odds(LinnikParams(1.5, 1.0), cfg)
    assert y == pytest.approx(1.5 * np.log(cfg.lambdas), rel=1e-12)


@pytest.mark.parametrize("lam", [1e-3, 0.1, 2.0])
def test_empirical_chf_terms_against_high_precision(lam):
    x = sample_linnik(RngStream(33), LinnikParams(1.1, 0.01), 50).values
    mods, gaps = empirical_chf_terms(x, [lam])
    with mpmath.workdps(60):
        re = mpmath.fsum(mpmath.cos(mpmath.mpf(lam) * mpmath.mpf(v)) for v in x) / len(x)
        im = mpmath.fsum(mpmath.sin(mpmath.mpf(lam) * mpmath.mpf(v)) for v in x) / len(x)
        mod = mpmath.sqrt(re * re + im * im)
        gap = 1 - mod
    assert mods[0] == pytest.approx(float(mod), rel=1e-14)
    # the gap is tiny at lam = 1e-3, where 1 - |psi_hat| would cancel entirely
    assert gaps[0] == pytest.approx(float(gap), rel=1e-10)


def test_charfn_out_of_range():
    with pytest.raises(ChfOutOfRange):
        estimate_charfn([0.0, 0.0, 0.0])
    cfg = charfn_config((0.5, 1.0))
    # |psi_hat| = 1 at both points when x = +-2 pi
    with pytest.raises(ChfOutOfRange):
        estimate_charfn([2 * math.pi, -2 * math.pi], cfg)
    # |psi_hat(1)| = |cos 3| exceeds |psi_hat(0.5)| = |cos 1.5|: negative slope
    with pytest.raises(ChfOutOfRange, match="not positive"):
        estimate_charfn([3.0, -3.0], cfg)


def test_charfn_on_sample_with_interval():
    x = sample_linnik(RngStream(32), LinnikParams(1.5, 1.0), 10**5)
    res = estimate_charfn(x, charfn_config((0.5, 1.0)), epsilon=0.05)
    assert res.alpha_hat == pytest.approx(1.5, abs=0.05)
    assert res.ci_alpha[0] < res.alpha_hat < res.ci_alpha[1]
    assert res.stderr_gamma > 0


def test_charfn_cov_sanity_and_symmetry():
    cov = charfn_asymptotic_cov(LinnikParams(1.5, 1.0), charfn_config((0.001, 0.1)))
    assert np.all(np.isfinite(cov))
    assert cov[0, 0] > 0
    assert cov[0, 1] == cov[1, 0]
    assert np.min(np.linalg.eigvalsh(cov)) >= -1e-10 * np.max(np.abs(cov))


def test_charfn_cov_not_psd_warning(monkeypatch):
    # W_P is a Gram matrix of a covariance, hence PSD for valid inputs; the
    # diagnostic is exercised with a deliberately indefinite matrix.
    bad = np.array([[1.0, 2.0], [2.0, 1.0]])
    monkeypatch.setattr(estimators, "_charfn_cov", lambda a, g, c: bad)
    with pytest.warns(NotPSDWarning):
        cov = charfn_asymptotic_cov(LinnikParams(1.5, 1.0), charfn_config())
    assert np.array_equal(cov, bad)


def _charfn_replicates(params, cfg, n, m, seed):
    est = np.empty((m, 2))
    for r in range(m):
        res = estimate_charfn(linnik_variates(RngStream(seed, r + 1).generator(), params, n), cfg)
        est[r] = res.alpha_hat, res.gamma_hat
    return est


@pytest.mark.slow
def test_charfn_cov_monte_carlo_moderate_lambdas():
    p = LinnikParams(1.5, 1.0)
    cfg = charfn_config((0.5, 1.0))
    n = 10**4
    emp = n * np.cov(_charfn_replicates(p, cfg, n, 2000, 5).T)
    cov = charfn_asymptotic_cov(p, cfg)
    assert emp[0, 0] == pytest.approx(cov[0, 0], rel=0.15)
    assert emp[1, 1] == pytest.approx(cov[1, 1], rel=0.15)


@pytest.mark.slow
@pytest.mark.xfail(strict=True, reason=(
    "pre-asymptotic: with lambda = 0.001 the estimate is driven by the few |x| > 1000 "
    "in a sample of 10^4 (about 0.3 per sample), so n Var(alpha_hat) is about 353 against "
    "W_P11 = 872; it reaches 831 +- 59 at n = 10^5 and 899 +- 74 at n = 10^6"))
def test_charfn_cov_monte_carlo_default_lambdas_n1e4():
    p = LinnikParams(1.5, 1.0)
    cfg = charfn_config((0.001, 0.1))
    n = 10**4
    emp = n * np.var(_charfn_replicates(p, cfg, n, 2000, 5)[:, 0], ddof=1)
    assert emp == pytest.approx(charfn_asymptotic_cov(p, cfg)[0, 0], rel=0.15)


@pytest.mark.slow
def test_charfn_cov_monte_carlo_default_lambdas_n1e5():
    p = LinnikParams(1.5, 1.0)
    cfg = charfn_config((0.001, 0.1))
    n = 10**5
    emp = n * np.var(_charfn_replicates(p, cfg, n, 1000, 6)[:, 0], ddof=1)
    assert emp == pytest.approx(charfn_asymptotic_cov(p, cfg)[0, 0], rel=0.15)


def test_estimate_result_json_round_trip():
    res = estimate_mom(sample_linnik(RngStream(1), LinnikParams(1.0, 0.2), 1000), epsilon=0.1)
    d = json.loads(res.to_json())
    assert d["method"] == "MoM"
    assert set(d) == {"alpha_hat", "gamma_hat", "method", "n", "stderr_alpha", "stderr_gamma",
                      "ci_alpha", "ci_gamma", "epsilon", "diagnostics"}
    back = EstimateResult.from_dict(d)
    assert back == res


def test_estimators_reject_tiny_samples():
    with pytest.raises(TooFewObservations):
        estimate_frac_moment([1.0])
    with pytest.raises(ZeroObservation):
        estimate_frac_moment([1.0, 0.0])


def test_mom_population_grid_is_exact():
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        for a in np.linspace(0.05, 2.0, 40):
            th = log_moment_theory(LinnikParams(a, math.exp(EULER_GAMMA)))
            res = mom_from_log_moments(th.mean_logabs, th.var_logabs, 10)
            assert res.alpha_hat == pytest.approx(a, rel=1e-12)
            assert res.gamma_hat == pytest.approx(math.exp(EULER_GAMMA), rel=1e-14)
