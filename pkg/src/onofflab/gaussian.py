"""Exact simulation of the limit objects.

Brownian drivers are built from independent Gaussian increments.  FBM
uses circulant embedding of fractional Gaussian noise: the covariance of
the increments is embedded in a circulant matrix whose eigenvalues come
out of one FFT, so a draw is exact in law and costs O(m log m).  The
ON-time fluctuation process is drawn as a dense multivariate Gaussian
from its stationary-increment covariance, which is exact but capped in
grid size.  The one-sided reflection map turns a free path into a
nonnegative path plus the minimal non-decreasing regulator.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .limits import LimitParams
from .paths import SampledPath

__all__ = [
    "brownian_path",
    "fgn",
    "fbm_path",
    "OnTimeCovariance",
    "fluctuation_path",
    "reflect",
    "gaussian_limit_queue",
    "fbm_limit_queue",
]

_DENSE_GRID_CAP = 4096
_EMBED_DOUBLINGS = 6


def _check_grid(times):
    times = np.asarray(times, dtype=np.float64)
    if times.ndim != 1 or times.size < 2 or times[0] != 0.0:
        raise ValueError("need a 1-D grid starting at 0 with at least 2 points")
    steps = np.diff(times)
    if not np.allclose(steps, steps[0], rtol=1e-9, atol=1e-12) or steps[0] <= 0.0:
        raise ValueError("grid must be uniform and increasing")
    return times, float(steps[0])


def brownian_path(variance_rate, times, rng, name="bm") -> SampledPath:
    """Brownian motion with Var(path(t)) = variance_rate * t, started at 0."""
    if variance_rate < 0.0:
        raise ValueError("variance rate must be nonnegative")
    times, dt = _check_grid(times)
    inc = rng.standard_normal(times.size - 1) * math.sqrt(variance_rate * dt)
    values = np.concatenate(([0.0], np.cumsum(inc)))
    return SampledPath(times, values, name=name)


def _fgn_eigenvalues(m, hurst):
    # circulant first row: fGn autocovariance out to lag m, then mirrored
    k = np.arange(m + 1, dtype=np.float64)
    two_h = 2.0 * hurst
    rho = 0.5 * ((k + 1.0) ** two_h + np.abs(k - 1.0) ** two_h - 2.0 * k**two_h)
    row = np.concatenate((rho, rho[-2:0:-1]))
    return np.fft.fft(row).real


def fgn(n, hurst, rng):
    """Unit-spacing standard fractional Gaussian noise, exact in law.

    Uses circulant embedding; the embedding is doubled if an eigenvalue
    is materially negative (rare for fGn), and a fraction of a
    floating-point ulp of negativity is clipped.
    """
    if not 0.0 < hurst < 1.0:
        raise ValueError("hurst must be in (0, 1)")
    if n < 1:
        raise ValueError("need at least one increment")
    if hurst == 0.5:
        return rng.standard_normal(n)

    m = 1 << max(1, (n - 1).bit_length())
    for _ in range(_EMBED_DOUBLINGS):
        lam = _fgn_eigenvalues(m, hurst)
        if lam.min() > -1e-10 * lam.max():
            break
        m *= 2
    else:
        raise ValueError(f"circulant embedding not positive semidefinite for H={hurst}, n={n}")
    lam = np.maximum(lam, 0.0)

    size = 2 * m
    spectrum = np.zeros(size, dtype=np.complex128)
    spectrum[0] = rng.standard_normal()
    spectrum[m] = rng.standard_normal()
    pairs = rng.standard_normal((m - 1, 2))
    inner = (pairs[:, 0] + 1j * pairs[:, 1]) / math.sqrt(2.0)
    spectrum[1:m] = inner
    spectrum[m + 1 :] = np.conj(inner[::-1])

    sample = np.fft.fft(np.sqrt(lam) * spectrum).real / math.sqrt(size)
    return sample[:n]


def fbm_path(hurst, times, rng, name="fbm") -> SampledPath:
    """Standard FBM on the grid: Cov(B(t), B(s)) = (t^2H + s^2H - |t-s|^2H)/2."""
    times, dt = _check_grid(times)
    inc = fgn(times.size - 1, hurst, rng) * dt**hurst
    values = np.concatenate(([0.0], np.cumsum(inc)))
    return SampledPath(times, values, name=name)


@dataclass(frozen=True)
class OnTimeCovariance:
    """Variance function of the centered cumulative-ON-time limit.

    mode "markov-exact" (exponential ON and OFF periods): the pooled
    state is a two-state Markov chain with autocovariance
    g(1-g) exp(-r u), r = 1/mean_on + 1/mean_off, and integrating it
    twice gives

        Var(t) = 2 g (1-g) (t/r - (1 - exp(-r t)) / r^2),

    which is exact at every t.  mode "asymptotic-heavy" treats the
    large-t power law pi_sq * t^(2H) * c as exact; it is meant for
    qualitative illustration only, since the quantitative heavy-regime
    experiments use the FBM limit and never need this process.
    """

    mode: str
    mean_on: float = 0.0
    mean_off: float = 0.0
    pi_sq: float = 0.0
    hurst: float = 0.0
    tail_c: float = 1.0

    @classmethod
    def markov_exact(cls, mean_on, mean_off) -> "OnTimeCovariance":
        if mean_on <= 0.0 or mean_off <= 0.0:
            raise ValueError("period means must be positive")
        return cls(mode="markov-exact", mean_on=mean_on, mean_off=mean_off)

    @classmethod
    def asymptotic_heavy(cls, pi_sq, hurst, tail_c) -> "OnTimeCovariance":
        if pi_sq <= 0.0 or tail_c <= 0.0 or not 0.5 <= hurst < 1.0:
            raise ValueError("need pi_sq > 0, tail_c > 0 and hurst in [0.5, 1)")
        return cls(mode="asymptotic-heavy", pi_sq=pi_sq, hurst=hurst, tail_c=tail_c)

    def variance(self, t):
        t = np.abs(np.asarray(t, dtype=np.float64))
        if self.mode == "markov-exact":
            g = self.mean_on / (self.mean_on + self.mean_off)
            r = 1.0 / self.mean_on + 1.0 / self.mean_off
            out = 2.0 * g * (1.0 - g) * (t / r - (1.0 - np.exp(-r * t)) / r**2)
        elif self.mode == "asymptotic-heavy":
            out = self.pi_sq * t ** (2.0 * self.hurst) * self.tail_c
        else:
            raise ValueError(f"unknown covariance mode {self.mode!r}")
        return out if out.ndim else float(out)

    def matrix(self, times):
        """Covariance matrix from the stationary-increment identity."""
        t = np.asarray(times, dtype=np.float64)
        v = self.variance(t)
        return 0.5 * (v[:, None] + v[None, :] - self.variance(t[:, None] - t[None, :]))


_factor_cache: dict = {}


def _dense_factor(cov: OnTimeCovariance, times):
    # a uniform grid from 0 is determined by (size, step), so the factor
    # for a fixed (covariance, grid) pair is computed once and reused
    key = (cov, times.size, float(times[1]))
    factor = _factor_cache.get(key)
    if factor is not None:
        return factor
    k = cov.matrix(times[1:])
    try:
        factor = np.linalg.cholesky(k)
    except np.linalg.LinAlgError:
        eigvals, eigvecs = np.linalg.eigh(k)
        scale = max(eigvals.max(), 1.0)
        if eigvals.min() < -1e-8 * scale:
            raise ValueError("covariance matrix is not positive semidefinite") from None
        factor = eigvecs * np.sqrt(np.maximum(eigvals, 0.0))
    if len(_factor_cache) > 8:
        _factor_cache.clear()
    _factor_cache[key] = factor
    return factor


def fluctuation_path(cov: OnTimeCovariance, times, rng, name="on_time_fluctuation") -> SampledPath:
    """Exact draw of the ON-time fluctuation process on the grid.

    Dense factorization, cached per (covariance, grid) and shared
    read-only across draws; grids are capped at 4096 points.  Raises if
    the covariance matrix is not positive semidefinite within 1e-8, which
    signals an invalid variance function.
    """
    times, _ = _check_grid(times)
    if times.size > _DENSE_GRID_CAP:
        raise ValueError(f"grid of {times.size} points exceeds the dense-covariance cap {_DENSE_GRID_CAP}")
    factor = _dense_factor(cov, times)
    values = np.concatenate(([0.0], factor @ rng.standard_normal(times.size - 1)))
    return SampledPath(times, values, name=name)


def reflect(path: SampledPath):
    """One-sided reflection at zero.

    regulator(t) = max over grid s <= t of (-path(s))^+, the minimal
    non-decreasing push; reflected = path + regulator >= 0.  Where the
    regulator strictly increases the reflected path is exactly 0.
    """
    push = _kernels.running_regulator(path.values)
    reflected = SampledPath(path.times, path.values + push, name=path.name + "_reflected")
    regulator = SampledPath(path.times, push, name=path.name + "_regulator")
    return reflected, regulator


def gaussian_limit_queue(
    params: LimitParams,
    arrival_rate: float,
    drift: float,
    service_variance: float,
    cov: OnTimeCovariance,
    times,
    rng,
):
    """Source-count-regime limit: reflected sum of three independent
    drivers minus a linear drift.

    The drivers are a Brownian motion with variance rate
    arrival_rate * gamma (Poisson fluctuation, already time-changed by
    the ON fraction), the ON-time fluctuation scaled by the arrival
    rate, and a Brownian motion with variance rate
    arrival_rate * gamma * service_variance (service fluctuation).
    Returns (queue path, regulator path).
    """
    if drift <= 0.0:
        raise ValueError("drift must be positive")
    if service_variance < 0.0:
        raise ValueError("service variance must be nonnegative")
    times, _ = _check_grid(times)
    rate_var = arrival_rate * params.gamma
    arr = brownian_path(rate_var, times, rng)
    svc = brownian_path(rate_var * service_variance, times, rng)
    flux = fluctuation_path(cov, times, rng)
    free = arr.values + arrival_rate * flux.values - svc.values - drift * times
    return reflect(SampledPath(times, free, name="queue_limit"))


def fbm_limit_queue(params: LimitParams, arrival_rate: float, drift: float, times, rng):
    """Time-scale-regime limit: reflected (rate * pi * FBM - drift * t).

    Requires an infinite-variance period law (Hurst > 1/2).
    Returns (queue path, regulator path).
    """
    if params.alpha_min >= 2.0:
        raise ValueError("FBM limit requires an infinite-variance period law")
    if drift <= 0.0:
        raise ValueError("drift must be positive")
    times, _ = _check_grid(times)
    driver = fbm_path(params.hurst, times, rng)
    free = arrival_rate * math.sqrt(params.pi_sq) * driver.values - drift * times
    return reflect(SampledPath(times, free, name="queue_limit"))
