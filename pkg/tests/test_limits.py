import math

import numpy as np
import pytest

from onofflab.distributions import Deterministic, Exponential, Pareto
from onofflab.limits import (
    LimitParams,
    choose_n_fast_growth,
    limit_params,
    normalizer_d_r,
    on_fraction,
    scale_n,
    scale_r,
    unscale_n,
    uv_diagnostic,
)
from onofflab.queueing import QueueTrace


def params_with(alpha_min=1.5, tail_c=1.0):
    hurst = (3.0 - alpha_min) / 2.0
    return LimitParams(
        gamma=0.5, alpha_on=alpha_min, alpha_off=2.0, a_on=1.0, a_off=0.5,
        b=math.inf, alpha_min=alpha_min, hurst=hurst, pi_sq=1.0,
        tail_c=tail_c, tail_ref="on",
    )


def make_trace(grid, queue, workload):
    grid = np.asarray(grid, dtype=np.float64)
    return QueueTrace(
        times=grid,
        queue=np.asarray(queue, dtype=np.int64),
        workload=np.asarray(workload, dtype=np.float64),
        busy=np.zeros_like(grid),
        n_arrivals=0,
        n_departures=0,
        mu=1.0,
    )


def test_on_fraction():
    assert on_fraction(1.0, 1.0) == 0.5
    assert on_fraction(1.0, 3.0) == 0.25
    with pytest.raises(ValueError):
        on_fraction(2.0, 0.0)


def test_limit_params_exponential_pair():
    p = limit_params(Exponential(1.0), Exponential(1.0))
    assert p.gamma == 0.5
    assert p.alpha_min == 2.0
    assert p.a_on == p.a_off == 0.5
    assert p.b == 1.0
    assert p.pi_sq == pytest.approx(0.25, abs=1e-12)
    assert p.hurst == 0.5
    assert p.tail_c == 1.0


def test_limit_params_pareto_exponential():
    p = limit_params(Pareto(1.5, 1.0), Exponential(1.0))
    assert p.b == math.inf
    assert p.alpha_min == 1.5
    assert p.a_on == pytest.approx(2.0 * math.sqrt(math.pi))
    # 2 * a_on / (8 * Gamma(2.5)) with Gamma(2.5) = 0.75 sqrt(pi)
    assert p.pi_sq == pytest.approx(2.0 / 3.0, abs=1e-12)
    assert p.hurst == 0.75
    assert p.tail_ref == "on"
    assert p.tail_c == pytest.approx((1.0 / 3.0) ** 1.5)


def test_limit_params_reversed_heavy_side():
    p = limit_params(Exponential(1.0), Pareto(1.5, 1.0))
    assert p.b == 0.0
    assert p.alpha_min == 1.5
    assert p.tail_ref == "off"


def test_limit_params_two_equal_paretos():
    on = Pareto(1.4, 1.0)
    off = Pareto(1.4, 1.0)
    p = limit_params(on, off)
    assert p.b == 1.0
    assert p.alpha_min == 1.4
    assert p.hurst == pytest.approx(0.8)
    # both terms contribute: numerator 2 (a_on + a_off) over 8 Gamma(2.6)
    a = p.a_on
    assert p.pi_sq == pytest.approx(2.0 * (a + a) / (8.0 * math.gamma(2.6)), rel=1e-12)


def test_pi_sq_positive_whenever_some_tail_coefficient_is():
    p = limit_params(Deterministic(1.0), Exponential(1.0))
    assert p.pi_sq > 0.0  # the exponential side carries a positive coefficient
    assert p.b == 0.0 or p.b == math.inf or p.b > 0


def test_hurst_iff_infinite_variance():
    light = limit_params(Exponential(1.0), Exponential(2.0))
    assert light.hurst == 0.5
    heavy = limit_params(Pareto(1.9, 1.0), Exponential(1.0))
    assert 0.5 < heavy.hurst < 1.0


def test_branch_consistency_at_merging_indices():
    # the two-term value at equal indices equals the sum of the two
    # one-sided single-term limits as the indices merge
    alpha = 1.5
    delta = 1e-8
    mu_on, mu_off = 1.0, 2.0
    two_term = limit_params(Pareto(alpha, mu_on), Pareto(alpha, mu_off))
    heavy_on = limit_params(Pareto(alpha, mu_on), Pareto(alpha + delta, mu_off))
    heavy_off = limit_params(Pareto(alpha + delta, mu_on), Pareto(alpha, mu_off))
    combined = heavy_on.pi_sq * two_term.b + heavy_off.pi_sq
    # b = c_on / c_off reweights the ON-side term in the two-term formula
    assert two_term.pi_sq == pytest.approx(combined, rel=1e-6)


def test_normalizer_examples():
    p = params_with(alpha_min=1.5, tail_c=1.0)
    assert normalizer_d_r(1000, 100.0, p) == pytest.approx(1000.0)
    assert normalizer_d_r(1000, 1.0, p) == pytest.approx(math.sqrt(1000.0))
    assert normalizer_d_r(1000, 100.0, params_with(tail_c=4.0)) == pytest.approx(2000.0)
    assert normalizer_d_r(1000, 100.0, p) ** 2 * 100.0 ** (1.5 - 3.0) / 1.0 == pytest.approx(1000.0)


def test_normalizer_rejects_light_tails():
    with pytest.raises(ValueError):
        normalizer_d_r(10, 10.0, params_with(alpha_min=2.0))


def test_fast_growth_examples():
    p = params_with(alpha_min=1.5, tail_c=1.0)
    assert choose_n_fast_growth(100.0, p, growth_exponent=0.1).n == 16
    assert choose_n_fast_growth(100.0, p, growth_exponent=0.5).n == 100
    ns = [choose_n_fast_growth(r, p).n for r in (10.0, 20.0, 50.0, 100.0, 400.0)]
    assert all(b >= a for a, b in zip(ns, ns[1:]))


def test_fast_growth_reports_divergence():
    p = limit_params(Pareto(1.5, 1.0), Exponential(1.0))
    tail = Pareto(1.5, 1.0)
    growth = [choose_n_fast_growth(r, p, tail=tail).growth for r in (10.0, 100.0, 1000.0)]
    assert growth[0] < growth[1] < growth[2]


def test_scale_n_examples():
    grid = np.linspace(0, 2, 3)
    trace = make_trace(grid, [0, 30, 0], [0.0, 0.0, 0.0])
    q, w = scale_n(trace, 100, 60.0)
    assert q.values[1] == pytest.approx(3.0)
    assert np.all(w.values == 0.0)


def test_scale_n_single_job_workload():
    # one job of size 1/mu at t=1 with mu = 60, N = 100:
    # scaled workload is (mu / sqrt(N)) * (1/mu) = 0.1
    grid = np.linspace(0, 2, 3)
    trace = make_trace(grid, [0, 1, 0], [0.0, 1.0 / 60.0, 0.0])
    _, w = scale_n(trace, 100, 60.0)
    assert w.values[1] == pytest.approx(0.1)


def test_scale_r_compresses_time_and_amplitude():
    grid = np.linspace(0, 100, 11)
    queue = np.zeros(11, dtype=int)
    queue[-1] = 500
    trace = make_trace(grid, queue, np.zeros(11))
    q, w = scale_r(trace, 1000, 100.0, 510.0, 1000.0)
    assert q.times[-1] == pytest.approx(1.0)
    assert q.values[-1] == pytest.approx(0.5)
    assert np.all(w.values == 0.0)


def test_scale_r_zero_trace():
    grid = np.linspace(0, 10, 6)
    trace = make_trace(grid, np.zeros(6, dtype=int), np.zeros(6))
    q, _ = scale_r(trace, 10, 10.0, 6.0, 3.0)
    assert np.all(q.values == 0.0)


def test_scale_roundtrip():
    rng = np.random.default_rng(3)
    grid = np.linspace(0, 5, 21)
    queue = rng.integers(0, 5000, 21)
    workload = rng.exponential(0.3, 21)
    trace = make_trace(grid, queue, workload)
    n, mu = 10, 5.0 + math.sqrt(10.0)
    q, w = scale_n(trace, n, mu)
    queue_back, workload_back = unscale_n(q, w, n, mu)
    np.testing.assert_array_equal(queue_back, trace.queue)  # bit-exact
    # float workload survives the round trip to within one ulp
    assert np.all(np.abs(workload_back - workload) <= np.spacing(workload))


def test_uv_diagnostic():
    p = params_with(alpha_min=1.5, tail_c=1.0)
    u, v = uv_diagnostic(1e4, p)
    assert u == pytest.approx(10.0)
    assert v == pytest.approx(10.0)
    u1, v1 = uv_diagnostic(1.0, params_with(tail_c=4.0))
    assert u1 == pytest.approx(2.0)
    assert v1 == pytest.approx(0.5)
    # strictly increasing in the time argument
    us, vs = zip(*(uv_diagnostic(t, p) for t in (1.0, 10.0, 100.0, 1000.0)))
    assert all(b > a for a, b in zip(us, us[1:]))
    assert all(b > a for a, b in zip(vs, vs[1:]))
    with pytest.raises(ValueError):
        uv_diagnostic(10.0, params_with(alpha_min=2.0))
