"""Period and service-time laws: sampling, equilibrium residuals, tail data.

Period distributions model ON/OFF durations.  Each kind exposes its
complementary CDF, its inverse CDF, and the equilibrium (integrated-tail)
residual law

    F_e(x) = (1/mean) * integral_0^x (1 - F(u)) du,

which is what a source's first, partially elapsed period follows when the
source is started in stationarity.  All sampling is inverse-CDF on
uniforms from a ``numpy.random.Generator``: no rejection loops, so a
counter-based stream reproduces every draw exactly.

Service distributions have mean exactly 1 by construction; the work they
describe is turned into durations by dividing by the service rate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import ClassVar

import numpy as np

__all__ = [
    "PeriodDistribution",
    "Pareto",
    "Exponential",
    "UniformPositive",
    "Deterministic",
    "ServiceDistribution",
    "DeterministicService",
    "ExponentialService",
    "TwoPointService",
    "tail_constant",
    "period_distribution",
    "service_distribution",
]


class PeriodDistribution:
    """Common interface of ON/OFF period laws.

    ``tail_index`` is in (1, 2]; finite-variance kinds report index 2 and
    ``tail_c`` 1, matching the convention that their tail plays no role in
    the long-range-dependent regime.  ``bounded_density_at_zero`` marks
    the kinds admissible in the diffusion-regime experiments (absolutely
    continuous with density bounded near 0).
    """

    kind: ClassVar[str]

    @property
    def mean(self) -> float:
        raise NotImplementedError

    @property
    def variance(self) -> float:
        raise NotImplementedError

    @property
    def tail_index(self) -> float:
        raise NotImplementedError

    @property
    def tail_c(self) -> float:
        raise NotImplementedError

    @property
    def bounded_density_at_zero(self) -> bool:
        raise NotImplementedError

    def ccdf(self, x):
        """P(X > x) for x >= 0."""
        raise NotImplementedError

    def ppf(self, u):
        """Inverse CDF on u in [0, 1)."""
        raise NotImplementedError

    def residual_cdf(self, x):
        """CDF of the equilibrium residual law."""
        raise NotImplementedError

    def residual_ppf(self, u):
        """Inverse CDF of the equilibrium residual law."""
        raise NotImplementedError

    def cdf(self, x):
        return 1.0 - self.ccdf(x)

    def sample(self, rng, size=None):
        """Draw period lengths; positive a.s."""
        return self.ppf(rng.random(size))

    def sample_residual(self, rng, size=None):
        """Draw from the equilibrium residual law."""
        return self.residual_ppf(rng.random(size))


@dataclass(frozen=True)
class Pareto(PeriodDistribution):
    """Pareto period with tail index strictly inside (1, 2).

    Parameterized by (alpha, mean); the scale cutoff is derived as
    x_min = (alpha - 1) / alpha * mean, so the complementary CDF equals
    x_min^alpha * x^(-alpha) for x >= x_min.  Variance is infinite.
    """

    alpha: float
    mean_value: float

    kind: ClassVar[str] = "pareto"

    def __post_init__(self):
        if not 1.0 < self.alpha < 2.0:
            raise ValueError(f"pareto tail index must be in (1, 2), got {self.alpha}")
        if self.mean_value <= 0.0:
            raise ValueError("pareto mean must be positive")

    @property
    def x_min(self) -> float:
        return (self.alpha - 1.0) / self.alpha * self.mean_value

    @property
    def mean(self) -> float:
        return self.mean_value

    @property
    def variance(self) -> float:
        return math.inf

    @property
    def tail_index(self) -> float:
        return self.alpha

    @property
    def tail_c(self) -> float:
        return self.x_min**self.alpha

    @property
    def bounded_density_at_zero(self) -> bool:
        return True

    def ccdf(self, x):
        x = np.asarray(x, dtype=np.float64)
        out = np.ones_like(x)
        above = x > self.x_min
        out = np.where(above, (self.x_min / np.where(above, x, 1.0)) ** self.alpha, out)
        return out if out.ndim else float(out)

    def ppf(self, u):
        u = np.asarray(u, dtype=np.float64)
        out = self.x_min * (1.0 - u) ** (-1.0 / self.alpha)
        return out if out.ndim else float(out)

    def residual_cdf(self, x):
        # integrated tail: linear up to the cutoff, then a power law with
        # exponent alpha - 1
        x = np.asarray(x, dtype=np.float64)
        x = np.maximum(x, 0.0)
        low = x / self.mean_value
        high = 1.0 - (self.x_min / np.maximum(x, self.x_min)) ** (self.alpha - 1.0) / self.alpha
        out = np.where(x <= self.x_min, low, high)
        return out if out.ndim else float(out)

    def residual_ppf(self, u):
        u = np.asarray(u, dtype=np.float64)
        knee = self.x_min / self.mean_value  # equals (alpha - 1) / alpha
        low = u * self.mean_value
        tail = np.where(u > knee, 1.0 - u, 1.0)
        high = self.x_min * (self.alpha * tail) ** (-1.0 / (self.alpha - 1.0))
        out = np.where(u <= knee, low, high)
        return out if out.ndim else float(out)


@dataclass(frozen=True)
class Exponential(PeriodDistribution):
    """Exponential period; its residual law is itself (memorylessness)."""

    mean_value: float

    kind: ClassVar[str] = "exponential"

    def __post_init__(self):
        if self.mean_value <= 0.0:
            raise ValueError("exponential mean must be positive")

    @property
    def mean(self) -> float:
        return self.mean_value

    @property
    def variance(self) -> float:
        return self.mean_value**2

    @property
    def tail_index(self) -> float:
        return 2.0

    @property
    def tail_c(self) -> float:
        return 1.0

    @property
    def bounded_density_at_zero(self) -> bool:
        return True

    def ccdf(self, x):
        x = np.asarray(x, dtype=np.float64)
        out = np.exp(-np.maximum(x, 0.0) / self.mean_value)
        return out if out.ndim else float(out)

    def ppf(self, u):
        u = np.asarray(u, dtype=np.float64)
        out = -self.mean_value * np.log1p(-u)
        return out if out.ndim else float(out)

    def residual_cdf(self, x):
        return self.cdf(x)

    def residual_ppf(self, u):
        return self.ppf(u)


@dataclass(frozen=True)
class UniformPositive(PeriodDistribution):
    """Uniform period on [low, high] with 0 <= low < high."""

    low: float
    high: float

    kind: ClassVar[str] = "uniform-positive"

    def __post_init__(self):
        if not 0.0 <= self.low < self.high:
            raise ValueError(f"uniform support needs 0 <= low < high, got [{self.low}, {self.high}]")

    @property
    def mean(self) -> float:
        return 0.5 * (self.low + self.high)

    @property
    def variance(self) -> float:
        return (self.high - self.low) ** 2 / 12.0

    @property
    def tail_index(self) -> float:
        return 2.0

    @property
    def tail_c(self) -> float:
        return 1.0

    @property
    def bounded_density_at_zero(self) -> bool:
        return True

    def ccdf(self, x):
        x = np.asarray(x, dtype=np.float64)
        out = np.clip((self.high - x) / (self.high - self.low), 0.0, 1.0)
        out = np.where(x < self.low, 1.0, out)
        return out if out.ndim else float(out)

    def ppf(self, u):
        u = np.asarray(u, dtype=np.float64)
        out = self.low + u * (self.high - self.low)
        return out if out.ndim else float(out)

    def residual_cdf(self, x):
        x = np.asarray(x, dtype=np.float64)
        x = np.clip(x, 0.0, self.high)
        w = self.high - self.low
        mid = np.clip(x, self.low, self.high)
        integ = np.minimum(x, self.low) + (mid - self.low) * (2.0 * self.high - mid - self.low) / (2.0 * w)
        out = integ / self.mean
        return out if out.ndim else float(out)

    def residual_ppf(self, u):
        u = np.asarray(u, dtype=np.float64)
        w = self.high - self.low
        knee = self.low / self.mean
        low_branch = u * self.mean
        # solve (x-low)(2w - (x-low))/(2w) = u*mean - low for x in [low, high]
        rad = np.maximum(w**2 - 2.0 * w * np.maximum(u * self.mean - self.low, 0.0), 0.0)
        high_branch = self.low + w - np.sqrt(rad)
        out = np.where(u <= knee, low_branch, high_branch)
        return out if out.ndim else float(out)


@dataclass(frozen=True)
class Deterministic(PeriodDistribution):
    """Point-mass period.  Not absolutely continuous, so it is excluded
    from diffusion-regime experiments and flagged accordingly."""

    value: float

    kind: ClassVar[str] = "deterministic"

    def __post_init__(self):
        if self.value <= 0.0:
            raise ValueError("deterministic period must be positive")

    @property
    def mean(self) -> float:
        return self.value

    @property
    def variance(self) -> float:
        return 0.0

    @property
    def tail_index(self) -> float:
        return 2.0

    @property
    def tail_c(self) -> float:
        return 1.0

    @property
    def bounded_density_at_zero(self) -> bool:
        return False

    def ccdf(self, x):
        x = np.asarray(x, dtype=np.float64)
        out = np.where(x < self.value, 1.0, 0.0)
        return out if out.ndim else float(out)

    def ppf(self, u):
        u = np.asarray(u, dtype=np.float64)
        out = np.full_like(u, self.value)
        return out if out.ndim else float(out)

    def residual_cdf(self, x):
        x = np.asarray(x, dtype=np.float64)
        out = np.clip(x / self.value, 0.0, 1.0)
        return out if out.ndim else float(out)

    def residual_ppf(self, u):
        u = np.asarray(u, dtype=np.float64)
        out = u * self.value
        return out if out.ndim else float(out)


def tail_constant(dist: PeriodDistribution) -> float:
    """Tail coefficient feeding the limit covariance.

    Gamma(2 - alpha) / (alpha - 1) for tail index alpha in (1, 2), and
    variance / 2 for finite-variance kinds.
    """
    if dist.tail_index < 2.0:
        return math.gamma(2.0 - dist.tail_index) / (dist.tail_index - 1.0)
    return dist.variance / 2.0


class ServiceDistribution:
    """Unit-mean work amounts; ``variance`` is the squared coefficient that
    enters the service-side diffusion term."""

    kind: ClassVar[str]

    @property
    def variance(self) -> float:
        raise NotImplementedError

    def ppf(self, u):
        raise NotImplementedError

    def sample(self, rng, size=None):
        return self.ppf(rng.random(size))


@dataclass(frozen=True)
class DeterministicService(ServiceDistribution):
    kind: ClassVar[str] = "deterministic"

    @property
    def variance(self) -> float:
        return 0.0

    def ppf(self, u):
        u = np.asarray(u, dtype=np.float64)
        out = np.ones_like(u)
        return out if out.ndim else float(out)


@dataclass(frozen=True)
class ExponentialService(ServiceDistribution):
    kind: ClassVar[str] = "exponential"

    @property
    def variance(self) -> float:
        return 1.0

    def ppf(self, u):
        u = np.asarray(u, dtype=np.float64)
        out = -np.log1p(-u)
        return out if out.ndim else float(out)


@dataclass(frozen=True)
class TwoPointService(ServiceDistribution):
    """Work equal to ``low`` with probability ``p_low``, else the unique
    larger value keeping the mean at 1."""

    low: float
    p_low: float

    kind: ClassVar[str] = "two-point"

    def __post_init__(self):
        if not 0.0 <= self.low < 1.0:
            raise ValueError("two-point low value must be in [0, 1)")
        if not 0.0 < self.p_low < 1.0:
            raise ValueError("two-point probability must be in (0, 1)")

    @property
    def high(self) -> float:
        return (1.0 - self.p_low * self.low) / (1.0 - self.p_low)

    @property
    def variance(self) -> float:
        return self.p_low * self.low**2 + (1.0 - self.p_low) * self.high**2 - 1.0

    def ppf(self, u):
        u = np.asarray(u, dtype=np.float64)
        out = np.where(u < self.p_low, self.low, self.high)
        return out if out.ndim else float(out)


_PERIOD_KINDS = {
    "pareto": lambda p: Pareto(alpha=float(p["alpha"]), mean_value=float(p["mean"])),
    "exponential": lambda p: Exponential(mean_value=float(p["mean"])),
    "uniform-positive": lambda p: UniformPositive(low=float(p.get("low", 0.0)), high=float(p["high"])),
    "deterministic": lambda p: Deterministic(value=float(p["value"])),
}

_SERVICE_KINDS = {
    "deterministic": lambda p: DeterministicService(),
    "exponential": lambda p: ExponentialService(),
    "two-point": lambda p: TwoPointService(low=float(p["low"]), p_low=float(p["p_low"])),
}


def period_distribution(kind: str, **params) -> PeriodDistribution:
    """Build a period law from its config-file form."""
    try:
        build = _PERIOD_KINDS[kind]
    except KeyError:
        raise ValueError(f"unknown period kind {kind!r}; expected one of {sorted(_PERIOD_KINDS)}") from None
    try:
        return build(params)
    except KeyError as missing:
        raise ValueError(f"period kind {kind!r} needs parameter {missing.args[0]!r}") from None


def service_distribution(kind: str, **params) -> ServiceDistribution:
    """Build a service law from its config-file form."""
    try:
        build = _SERVICE_KINDS[kind]
    except KeyError:
        raise ValueError(f"unknown service kind {kind!r}; expected one of {sorted(_SERVICE_KINDS)}") from None
    try:
        return build(params)
    except KeyError as missing:
        raise ValueError(f"service kind {kind!r} needs parameter {missing.args[0]!r}") from None
