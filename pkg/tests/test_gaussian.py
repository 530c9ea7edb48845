import math

import numpy as np
import pytest
from scipy import integrate

from onofflab.distributions import Exponential, Pareto
from onofflab.gaussian import (
    OnTimeCovariance,
    brownian_path,
    fbm_limit_queue,
    fbm_path,
    fgn,
    fluctuation_path,
    gaussian_limit_queue,
    reflect,
)
from onofflab.limits import limit_params
from onofflab.paths import SampledPath
from onofflab.streams import derive_stream

GRID8 = np.linspace(0.0, 8.0, 9)


def draw_matrix(fn, reps):
    return np.array([fn(i) for i in range(reps)])


def test_brownian_zero_rate_is_zero_path():
    rng = derive_stream(30, "bm0")
    path = brownian_path(0.0, GRID8, rng)
    assert np.all(path.values == 0.0)


def test_brownian_variance_and_covariance():
    rng = derive_stream(30, "bm1")
    draws = draw_matrix(lambda _i: brownian_path(1.0, GRID8, rng).values, 10_000)
    assert draws[:, 1].var() == pytest.approx(1.0, abs=0.03)
    cov12 = np.mean(draws[:, 1] * draws[:, 2])
    assert cov12 == pytest.approx(1.0, abs=0.05)


def test_fbm_reduces_to_brownian_at_half():
    rng = derive_stream(31, "fbm-half")
    draws = draw_matrix(lambda _i: fbm_path(0.5, GRID8, rng).values, 10_000)
    cov12 = np.mean(draws[:, 1] * draws[:, 2])
    assert cov12 == pytest.approx(1.0, abs=0.05)


def test_fbm_covariance_formula_h075():
    rng = derive_stream(31, "fbm-75")
    draws = draw_matrix(lambda _i: fbm_path(0.75, GRID8, rng).values, 10_000)
    cov12 = np.mean(draws[:, 1] * draws[:, 2])
    assert cov12 == pytest.approx(math.sqrt(2.0), abs=0.05)


@pytest.mark.parametrize("hurst", [0.5, 0.75])
def test_fbm_covariance_grid_within_standard_errors(hurst):
    reps = 10_000
    rng = derive_stream(31, "fbm-grid", hurst)
    draws = draw_matrix(lambda _i: fbm_path(hurst, GRID8, rng).values[1:], reps)
    emp = draws.T @ draws / reps
    t = GRID8[1:]
    theory = 0.5 * (
        t[:, None] ** (2 * hurst) + t[None, :] ** (2 * hurst)
        - np.abs(t[:, None] - t[None, :]) ** (2 * hurst)
    )
    se = np.sqrt((np.outer(np.diag(theory), np.diag(theory)) + theory**2) / reps)
    assert np.all(np.abs(emp - theory) < 4.0 * se)


@pytest.mark.parametrize("hurst", [0.5, 0.75])
def test_fbm_variance_slope_is_two_h(hurst):
    reps = 10_000
    rng = derive_stream(31, "fbm-slope", hurst)
    draws = draw_matrix(lambda _i: fbm_path(hurst, GRID8, rng).values[1:], reps)
    var = draws.var(axis=0)
    slope = np.polyfit(np.log(GRID8[1:]), np.log(var), 1)[0]
    assert slope == pytest.approx(2.0 * hurst, abs=0.05)


def test_fgn_rejects_bad_hurst():
    rng = derive_stream(31, "bad")
    with pytest.raises(ValueError):
        fgn(16, 1.0, rng)
    with pytest.raises(ValueError):
        fgn(16, 0.0, rng)


def test_markov_exact_variance_closed_form():
    cov = OnTimeCovariance.markov_exact(1.0, 1.0)
    assert cov.variance(1.0) == pytest.approx(0.25 - (1.0 - math.exp(-2.0)) / 8.0)


def test_markov_exact_variance_matches_double_quadrature():
    # oracle: integrate the exponential autocovariance twice, numerically
    mu_on, mu_off = 1.0, 2.0
    cov = OnTimeCovariance.markov_exact(mu_on, mu_off)
    g = mu_on / (mu_on + mu_off)
    r = 1.0 / mu_on + 1.0 / mu_off

    def eta(u):
        return g * (1.0 - g) * math.exp(-r * u)

    for t in np.linspace(0.25, 20.0, 20):
        oracle, _ = integrate.dblquad(lambda u, v: eta(u), 0.0, t, 0.0, lambda v: v)
        assert cov.variance(t) == pytest.approx(2.0 * oracle, abs=1e-6)


def test_markov_exact_long_run_slope_matches_pi_sq():
    cov = OnTimeCovariance.markov_exact(1.0, 1.0)
    p = limit_params(Exponential(1.0), Exponential(1.0))
    assert cov.variance(2000.0) / 2000.0 == pytest.approx(p.pi_sq, abs=1e-3)


def test_fluctuation_path_markov_empirical_variance():
    cov = OnTimeCovariance.markov_exact(1.0, 1.0)
    times = np.linspace(0.0, 2.0, 9)
    rng = derive_stream(32, "flux-markov")
    draws = draw_matrix(lambda _i: fluctuation_path(cov, times, rng).values, 10_000)
    assert draws[:, 4].var() == pytest.approx(cov.variance(1.0), abs=0.01)


def test_fluctuation_path_heavy_empirical_variance():
    p = limit_params(Pareto(1.5, 1.0), Exponential(1.0))
    cov = OnTimeCovariance.asymptotic_heavy(p.pi_sq, p.hurst, 1.0)
    times = np.linspace(0.0, 2.0, 9)
    rng = derive_stream(32, "flux-heavy")
    draws = draw_matrix(lambda _i: fluctuation_path(cov, times, rng).values, 10_000)
    assert draws[:, 4].var() == pytest.approx(2.0 / 3.0, abs=0.03)


def test_fluctuation_grid_cap():
    cov = OnTimeCovariance.markov_exact(1.0, 1.0)
    times = np.linspace(0.0, 10.0, 5000)
    with pytest.raises(ValueError, match="cap"):
        fluctuation_path(cov, times, derive_stream(32, "cap"))


def test_fluctuation_rejects_non_psd_variance():
    # variance growing faster than t^2 cannot come from a stationary-
    # increment process; the builder must refuse it
    bad = OnTimeCovariance(mode="asymptotic-heavy", pi_sq=1.0, hurst=1.5, tail_c=1.0)
    times = np.linspace(0.0, 4.0, 9)
    with pytest.raises(ValueError, match="positive semidefinite"):
        fluctuation_path(bad, times, derive_stream(32, "psd"))


def test_reflect_pure_negative_drift():
    path = SampledPath(np.array([0.0, 1.0, 2.0]), np.array([0.0, -1.0, -2.0]))
    reflected, regulator = reflect(path)
    np.testing.assert_array_equal(reflected.values, [0.0, 0.0, 0.0])
    np.testing.assert_array_equal(regulator.values, [0.0, 1.0, 2.0])


def test_reflect_worked_example():
    path = SampledPath(np.array([0.0, 1.0, 2.0, 3.0]), np.array([0.0, 1.0, -1.0, 2.0]))
    reflected, regulator = reflect(path)
    np.testing.assert_array_equal(regulator.values, [0.0, 0.0, 1.0, 1.0])
    np.testing.assert_array_equal(reflected.values, [0.0, 1.0, 0.0, 3.0])


def test_reflect_nonnegative_path_untouched():
    values = np.array([0.0, 0.5, 0.2, 1.5])
    path = SampledPath(np.linspace(0, 3, 4), values)
    reflected, regulator = reflect(path)
    np.testing.assert_array_equal(regulator.values, 0.0)
    np.testing.assert_array_equal(reflected.values, values)


def increment_recursion(values):
    # brute-force: q_{k+1} = max(q_k + dx, 0)
    q = np.empty_like(values)
    q[0] = max(values[0], 0.0)
    for k in range(1, values.size):
        q[k] = max(q[k - 1] + values[k] - values[k - 1], 0.0)
    return q


def test_reflection_oracle_equivalence():
    rng = derive_stream(33, "reflect-oracle")
    times = np.linspace(0.0, 1.0, 1000)
    worst = 0.0
    for _ in range(1000):
        values = np.concatenate(([0.0], np.cumsum(rng.normal(0, math.sqrt(1e-3), 999))))
        reflected, regulator = reflect(SampledPath(times, values))
        brute = increment_recursion(values)
        worst = max(worst, np.abs(reflected.values - brute).max())
        # discrete complementarity: the reflected path is exactly 0
        # wherever the regulator increases
        increases = np.diff(regulator.values) > 0
        comp = np.abs(reflected.values[1:][increases] * np.diff(regulator.values)[increases]).sum()
        assert comp < 1e-9
        assert np.all(np.diff(regulator.values) >= 0.0)
        assert np.all(reflected.values >= 0.0)
    assert worst < 1e-12


def test_gaussian_limit_drift_only():
    p = limit_params(Exponential(1.0), Exponential(1.0))
    cov = OnTimeCovariance.markov_exact(1.0, 1.0)
    times = np.linspace(0.0, 5.0, 26)
    rng = derive_stream(34, "drift-only")
    queue, regulator = gaussian_limit_queue(p, 0.0, 1.0, 0.0, cov, times, rng)
    np.testing.assert_allclose(queue.values, 0.0, atol=1e-12)
    np.testing.assert_allclose(regulator.values, times, atol=1e-12)


def test_gaussian_limit_driver_variance_composition():
    lam, theta, sigma_v2 = 1.0, 1.0, 1.0
    p = limit_params(Exponential(1.0), Exponential(1.0))
    cov = OnTimeCovariance.markov_exact(1.0, 1.0)
    times = np.linspace(0.0, 2.0, 11)
    rng = derive_stream(34, "variance")
    reps = 10_000
    free = np.empty((reps, times.size))
    for i in range(reps):
        queue, regulator = gaussian_limit_queue(p, lam, theta, sigma_v2, cov, times, rng)
        free[i] = queue.values - regulator.values  # recovers the free path
    t = times[-1]
    expected = lam * p.gamma * t + lam**2 * cov.variance(t) + lam * p.gamma * sigma_v2 * t
    # the deterministic drift does not contribute to the variance
    assert free[:, -1].var() == pytest.approx(expected, rel=0.03)
    assert free[:, -1].mean() == pytest.approx(-theta * t, abs=0.05)


def test_gaussian_limit_queue_nonnegative():
    p = limit_params(Exponential(1.0), Exponential(1.0))
    cov = OnTimeCovariance.markov_exact(1.0, 1.0)
    times = np.linspace(0.0, 5.0, 51)
    rng = derive_stream(34, "nonneg")
    for _ in range(50):
        queue, _ = gaussian_limit_queue(p, 1.0, 1.0, 1.0, cov, times, rng)
        assert np.all(queue.values >= 0.0)


def test_driver_independence_cross_covariances():
    times = np.linspace(0.0, 2.0, 9)
    cov = OnTimeCovariance.markov_exact(1.0, 1.0)
    reps = 10_000
    a = np.empty(reps)
    s = np.empty(reps)
    f = np.empty(reps)
    for i in range(reps):
        rng_a = derive_stream(35, "ind", "a", i)
        rng_s = derive_stream(35, "ind", "s", i)
        rng_f = derive_stream(35, "ind", "f", i)
        a[i] = brownian_path(0.5, times, rng_a).values[-1]
        s[i] = brownian_path(0.5, times, rng_s).values[-1]
        f[i] = fluctuation_path(cov, times, rng_f).values[-1]
    for x, y in ((a, s), (a, f), (s, f)):
        cross = np.mean(x * y)
        se = np.sqrt(np.var(x) * np.var(y) / reps)
        assert abs(cross) < 4.0 * se


def test_fbm_limit_queue_driver_variance():
    p = limit_params(Pareto(1.5, 1.0), Exponential(1.0))
    lam, theta = 1.0, 1.0
    times = np.linspace(0.0, 1.0, 21)
    rng = derive_stream(36, "fbm-limit")
    reps = 10_000
    ends = np.empty(reps)
    for i in range(reps):
        queue, regulator = fbm_limit_queue(p, lam, theta, times, rng)
        assert np.all(queue.values >= 0.0)
        ends[i] = queue.values[-1] - regulator.values[-1] + theta * times[-1]
    expected = lam**2 * p.pi_sq * times[-1] ** (2 * p.hurst)
    assert ends.var() == pytest.approx(expected, rel=0.03)


def test_fbm_limit_drift_domination():
    p = limit_params(Pareto(1.5, 1.0), Exponential(1.0))
    times = np.linspace(0.0, 0.5, 11)
    rng = derive_stream(36, "domination")
    hits = 0
    for _ in range(200):
        queue, _ = fbm_limit_queue(p, 0.05, 50.0, times, rng)
        hits += queue.values[-1] < 1e-6
    assert hits >= 195


def test_fbm_limit_complementarity():
    p = limit_params(Pareto(1.5, 1.0), Exponential(1.0))
    times = np.linspace(0.0, 1.0, 101)
    rng = derive_stream(36, "comp")
    queue, regulator = fbm_limit_queue(p, 1.0, 1.0, times, rng)
    comp = np.sum(queue.values[1:] * np.diff(regulator.values))
    assert abs(comp) < 1e-9


def test_fbm_limit_rejects_light_tails():
    p = limit_params(Exponential(1.0), Exponential(1.0))
    with pytest.raises(ValueError, match="infinite-variance"):
        fbm_limit_queue(p, 1.0, 1.0, GRID8, derive_stream(36, "light"))
