"""Heavy-traffic parameter calculus, path scalings, and regime diagnostics.

From the two period laws this module derives every constant the limit
processes need:

  * ``gamma``: long-run fraction of time a source is ON,
  * ``a_on`` / ``a_off``: per-law tail coefficients,
  * ``b``: the tail-ratio index deciding which side dominates,
  * ``alpha_min``: dominating tail index, with Hurst = (3 - alpha_min)/2,
  * ``pi_sq``: variance coefficient of the ON-time fluctuation limit,
  * ``tail_c``: the constant standing in for the slowly varying factor of
    the dominating tail (this artifact restricts slowly varying functions
    to constants).

The tail-ratio index compares tail weights in the x -> infinity limit:
with constant tail factors it is c_on / c_off when the indices are equal,
and 0 or infinity when they differ.  A finite positive ratio means both
sides contribute to ``pi_sq``; otherwise only the heavier side does and
the reference tail is the heavier law's.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import TYPE_CHECKING, NamedTuple

import numpy as np

from .distributions import PeriodDistribution, tail_constant
from .paths import SampledPath

if TYPE_CHECKING:
    from .queueing import QueueTrace

__all__ = [
    "LimitParams",
    "on_fraction",
    "limit_params",
    "normalizer_d_r",
    "choose_n_fast_growth",
    "FastGrowthChoice",
    "scale_n",
    "scale_r",
    "uv_diagnostic",
]


def on_fraction(mean_on: float, mean_off: float) -> float:
    """Stationary probability that a source is ON."""
    if mean_on <= 0.0 or mean_off <= 0.0:
        raise ValueError("period means must be positive")
    return mean_on / (mean_on + mean_off)


@dataclass(frozen=True)
class LimitParams:
    """Derived constants of the limit processes."""

    gamma: float
    alpha_on: float
    alpha_off: float
    a_on: float
    a_off: float
    b: float  # may be 0 or math.inf
    alpha_min: float
    hurst: float
    pi_sq: float
    tail_c: float
    tail_ref: str  # "on" | "off": whose complementary CDF drives the fast-growth rule

    def as_dict(self) -> dict:
        return {
            "gamma": self.gamma,
            "alpha_on": self.alpha_on,
            "alpha_off": self.alpha_off,
            "a_on": self.a_on,
            "a_off": self.a_off,
            "b": self.b,
            "alpha_min": self.alpha_min,
            "hurst": self.hurst,
            "pi_sq": self.pi_sq,
            "tail_c": self.tail_c,
            "tail_ref": self.tail_ref,
        }


def limit_params(on: PeriodDistribution, off: PeriodDistribution) -> LimitParams:
    """Compute the full constant block for a pair of period laws."""
    mu_on, mu_off = on.mean, off.mean
    gamma = on_fraction(mu_on, mu_off)
    alpha_on, alpha_off = on.tail_index, off.tail_index
    a_on, a_off = tail_constant(on), tail_constant(off)

    if alpha_on == alpha_off:
        b = on.tail_c / off.tail_c
    elif alpha_on < alpha_off:
        b = math.inf
    else:
        b = 0.0

    denom_means = (mu_on + mu_off) ** 3
    if 0.0 < b < math.inf:
        alpha_min = alpha_on
        pi_sq = 2.0 * (mu_off**2 * a_on * b + mu_on**2 * a_off) / (
            denom_means * math.gamma(4.0 - alpha_min)
        )
        tail_c, tail_ref = off.tail_c, "off"
    elif b == math.inf:
        alpha_min = alpha_on
        pi_sq = 2.0 * mu_off**2 * a_on / (denom_means * math.gamma(4.0 - alpha_min))
        tail_c, tail_ref = on.tail_c, "on"
    else:
        alpha_min = alpha_off
        pi_sq = 2.0 * mu_on**2 * a_off / (denom_means * math.gamma(4.0 - alpha_min))
        tail_c, tail_ref = off.tail_c, "off"

    hurst = (3.0 - alpha_min) / 2.0
    return LimitParams(
        gamma=gamma,
        alpha_on=alpha_on,
        alpha_off=alpha_off,
        a_on=a_on,
        a_off=a_off,
        b=b,
        alpha_min=alpha_min,
        hurst=hurst,
        pi_sq=pi_sq,
        tail_c=tail_c,
        tail_ref=tail_ref,
    )


def normalizer_d_r(n: int, r: float, params: LimitParams) -> float:
    """Amplitude normalizer of the time-scaled queue, sqrt(N R^(3-alpha) c)."""
    if params.alpha_min >= 2.0:
        raise ValueError("time-scale normalizer requires an infinite-variance period law")
    return math.sqrt(n * r ** (3.0 - params.alpha_min) * params.tail_c)


class FastGrowthChoice(NamedTuple):
    n: int
    growth: float  # achieved value of N * R * ccdf_ref(R); must diverge in R


def choose_n_fast_growth(
    r: float,
    params: LimitParams,
    growth_exponent: float = 0.5,
    prefactor: float = 1.0,
    tail: PeriodDistribution | None = None,
) -> FastGrowthChoice:
    """Pick a source count growing fast enough for the FBM regime.

    N = ceil(prefactor * R^(alpha_min - 1 + growth_exponent)) makes
    N * R * ccdf_ref(R) grow like R^growth_exponent.  The achieved value is
    reported so a run log can confirm divergence over the chosen R range;
    it uses the exact reference tail when ``tail`` is passed, else the
    power-law form with the stored constant.
    """
    if params.alpha_min >= 2.0:
        raise ValueError("fast-growth selection requires an infinite-variance period law")
    if growth_exponent <= 0.0 or prefactor <= 0.0:
        raise ValueError("growth exponent and prefactor must be positive")
    n = math.ceil(prefactor * r ** (params.alpha_min - 1.0 + growth_exponent))
    if tail is not None:
        ccdf_r = float(tail.ccdf(r))
    else:
        ccdf_r = params.tail_c * r ** (-params.alpha_min)
    return FastGrowthChoice(int(n), n * r * ccdf_r)


def scale_n(trace: "QueueTrace", n: int, mu: float):
    """Source-count scaling: queue / sqrt(N) and workload * mu / sqrt(N)."""
    root = math.sqrt(n)
    q = SampledPath(trace.times, trace.queue / root, name="queue_scaled")
    w = SampledPath(trace.times, trace.workload * (mu / root), name="workload_scaled")
    return q, w


def scale_r(trace: "QueueTrace", n: int, r: float, mu: float, d_r: float):
    """Time scaling: compress time by R and amplitudes by the normalizer."""
    times = trace.times / r
    q = SampledPath(times, trace.queue / d_r, name="queue_scaled")
    w = SampledPath(times, trace.workload * (mu / d_r), name="workload_scaled")
    return q, w


def uv_diagnostic(t: float, params: LimitParams):
    """The two regularly varying normalizer ratios that must both diverge
    over the chosen time-scale range for the FBM regime to be honest."""
    if params.alpha_min >= 2.0:
        raise ValueError("diagnostic requires an infinite-variance period law")
    if t <= 0.0:
        raise ValueError("time must be positive")
    root_c = math.sqrt(params.tail_c)
    u = t ** (1.0 - params.alpha_min / 2.0) * root_c
    v = t ** (params.alpha_min / 2.0 - 0.5) / root_c
    return u, v


def unscale_n(q: SampledPath, w: SampledPath, n: int, mu: float):
    """Inverse of ``scale_n``.

    Queue counts are integers, so rounding recovers them bit-exactly.
    The workload values are generic floats; inverting the scaling
    reproduces them only to within one ulp (a float cannot survive a
    multiply/divide round trip exactly for arbitrary factors).
    """
    root = math.sqrt(n)
    queue = np.rint(q.values * root).astype(np.int64)
    workload = w.values * (root / mu)
    return queue, workload
