"""Ensemble statistics turning simulation output into decision numbers.

Convergence checks are marginal: weak convergence implies convergence of
the fixed-time marginals, and marginals are what two-sample distances can
test at desk scale.  The two-sample Kolmogorov-Smirnov statistic with the
asymptotic 1% critical value is the workhorse; the Hurst estimator is the
aggregated-variance method on block sums.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .paths import SampledPath

__all__ = [
    "Ensemble",
    "KsTwoSample",
    "ks_two_sample",
    "HurstEstimate",
    "estimate_hurst",
    "VarianceCurve",
    "empirical_variance_curve",
    "collapse_gap",
    "ConvergenceRow",
    "ConvergenceReport",
    "marginal_convergence_report",
]


@dataclass(frozen=True)
class Ensemble:
    """Replications of one process sampled on a common grid."""

    name: str
    times: np.ndarray
    values: np.ndarray  # shape (replications, len(times))
    seed_labels: tuple = ()

    def __post_init__(self):
        times = np.asarray(self.times, dtype=np.float64)
        values = np.asarray(self.values, dtype=np.float64)
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "values", values)
        if values.ndim != 2 or values.shape[1] != times.size:
            raise ValueError("values must be (replications, len(times))")
        if values.shape[0] < 2:
            raise ValueError("need at least 2 replications")

    @property
    def replications(self) -> int:
        return int(self.values.shape[0])

    def at(self, t):
        """Column of replication values at grid time t."""
        idx = int(np.argmin(np.abs(self.times - t)))
        if abs(self.times[idx] - t) > 1e-9 * max(1.0, abs(t)):
            raise ValueError(f"time {t} is not on the ensemble grid")
        return self.values[:, idx]


class KsTwoSample(NamedTuple):
    statistic: float
    critical: float  # asymptotic two-sample critical value at the chosen level

    @property
    def passed(self) -> bool:
        return self.statistic < self.critical


def ks_two_sample(a, b, level: float = 0.01) -> KsTwoSample:
    """Two-sample Kolmogorov-Smirnov distance and critical value.

    The statistic is the sup distance between the two empirical CDFs,
    evaluated at every pooled data point so ties are handled exactly.
    The critical value is the asymptotic
    sqrt(-ln(level/2)/2) * sqrt((n+m)/(n*m)).
    """
    a = np.sort(np.asarray(a, dtype=np.float64))
    b = np.sort(np.asarray(b, dtype=np.float64))
    if a.size == 0 or b.size == 0:
        raise ValueError("both samples must be nonempty")
    if not 0.0 < level < 1.0:
        raise ValueError("level must be in (0, 1)")
    pooled = np.concatenate((a, b))
    cdf_a = np.searchsorted(a, pooled, side="right") / a.size
    cdf_b = np.searchsorted(b, pooled, side="right") / b.size
    statistic = float(np.abs(cdf_a - cdf_b).max())
    coeff = math.sqrt(-0.5 * math.log(level / 2.0))
    critical = coeff * math.sqrt((a.size + b.size) / (a.size * b.size))
    return KsTwoSample(statistic, critical)


class HurstEstimate(NamedTuple):
    hurst: float
    stderr: float
    block_sizes: np.ndarray
    block_variances: np.ndarray


def estimate_hurst(increments, min_blocks: int = 8) -> HurstEstimate:
    """Aggregated-variance Hurst estimator on an ensemble of increment series.

    For block sizes m = 1, 2, 4, ... the variance of block sums grows like
    m^(2H); the estimate is half the slope of log2 variance against
    log2 m.  Block sums are pooled across replications and centered at the
    pooled mean, so series with a common nonzero mean are handled and the
    centering bias shrinks with the replication count.
    """
    series = np.asarray(increments, dtype=np.float64)
    if series.ndim == 1:
        series = series[None, :]
    reps, n = series.shape
    if reps < 2:
        raise ValueError("need at least 2 replications")
    if np.ptp(series) == 0.0:
        raise ValueError("degenerate (constant) series")

    sizes = []
    variances = []
    m = 1
    while n // m >= min_blocks:
        k = n // m
        sums = series[:, : k * m].reshape(reps, k, m).sum(axis=2).ravel()
        sizes.append(m)
        variances.append(sums.var(ddof=1))
        m *= 2
    if len(sizes) < 4:
        raise ValueError("series too short for the block-size ladder")

    x = np.log2(np.asarray(sizes, dtype=np.float64))
    y = np.log2(np.asarray(variances))
    design = np.column_stack((np.ones_like(x), x))
    coef, residuals, *_ = np.linalg.lstsq(design, y, rcond=None)
    slope = coef[1]
    dof = x.size - 2
    resid = y - design @ coef
    sxx = np.sum((x - x.mean()) ** 2)
    slope_se = math.sqrt(float(resid @ resid) / dof / sxx) if dof > 0 else math.nan
    return HurstEstimate(float(slope / 2.0), float(slope_se / 2.0), np.asarray(sizes), np.asarray(variances))


class VarianceCurve(NamedTuple):
    times: np.ndarray
    variance: np.ndarray
    stderr: np.ndarray


def empirical_variance_curve(ensemble: Ensemble, times) -> VarianceCurve:
    """Pointwise sample variance across replications, with the standard
    error from the sample fourth moment."""
    times = np.atleast_1d(np.asarray(times, dtype=np.float64))
    var = np.empty_like(times)
    se = np.empty_like(times)
    for i, t in enumerate(times):
        col = ensemble.at(t)
        v = col.var(ddof=1)
        centered = col - col.mean()
        fourth = np.mean(centered**4)
        var[i] = v
        se[i] = math.sqrt(max(fourth - v**2, 0.0) / col.size)
    return VarianceCurve(times, var, se)


def collapse_gap(a: SampledPath, b: SampledPath) -> float:
    """Sup-norm gap between two paths on one grid."""
    if a.times.shape != b.times.shape or not np.array_equal(a.times, b.times):
        raise ValueError("paths must share one grid")
    return float(np.abs(a.values - b.values).max())


@dataclass(frozen=True)
class ConvergenceRow:
    ladder: float  # source count or time scale
    t: float
    statistic: float
    critical: float


@dataclass(frozen=True)
class ConvergenceReport:
    """KS distances between scaled-queue marginals and limit marginals,
    per ladder rung and checkpoint time."""

    rows: tuple

    def stats_at(self, t):
        rows = sorted((r for r in self.rows if r.t == t), key=lambda r: r.ladder)
        return [r.statistic for r in rows], rows[-1].critical if rows else math.nan

    @property
    def times(self):
        return sorted({r.t for r in self.rows})

    @property
    def endpoint_pass(self) -> bool:
        """Largest rung beats the smallest and sits below 2x critical."""
        ok = True
        for t in self.times:
            stats, critical = self.stats_at(t)
            ok &= stats[-1] < stats[0] and stats[-1] < 2.0 * critical
        return ok

    @property
    def monotone_pass(self) -> bool:
        """Strict decrease at every rung and largest below 2x critical."""
        ok = True
        for t in self.times:
            stats, critical = self.stats_at(t)
            ok &= all(s2 < s1 for s1, s2 in zip(stats, stats[1:]))
            ok &= stats[-1] < 2.0 * critical
        return ok


def marginal_convergence_report(ladder_ensembles, limit_ensemble: Ensemble, times, level=0.01) -> ConvergenceReport:
    """Compare scaled-queue ensembles along a ladder against limit draws.

    ``ladder_ensembles`` maps the ladder value (source count or time
    scale) to its Ensemble; each (rung, t) cell records the two-sample KS
    distance between the replication values and the limit values at t.
    """
    rows = []
    for ladder in sorted(ladder_ensembles):
        ens = ladder_ensembles[ladder]
        for t in times:
            ks = ks_two_sample(ens.at(t), limit_ensemble.at(t), level=level)
            rows.append(ConvergenceRow(float(ladder), float(t), ks.statistic, ks.critical))
    return ConvergenceReport(tuple(rows))
