"""Event-driven FIFO single-server queue under both heavy-traffic rate rules.

The engine starts empty, is work-conserving and non-preemptive, and
records three paths on a sampling grid:

  * queue length (packets in system, incl. the one in service),
  * busy time (cumulative time the server was serving),
  * workload (time to drain all work that has arrived, minus busy time),

Work amounts are unit-mean samples divided by the service rate, so the
rate rule sets how close the server runs to saturation.  The module also
ships an independent workload recursion (``lindley_workload``) used to
cross-check the event engine.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from . import _kernels
from .distributions import PeriodDistribution, ServiceDistribution
from .sources import ArrivalStream

if TYPE_CHECKING:
    from .limits import LimitParams

__all__ = [
    "QueueConfig",
    "QueueTrace",
    "service_rate_n",
    "service_rate_r",
    "simulate_queue",
    "fifo_trace",
    "lindley_workload",
]


@dataclass(frozen=True)
class QueueConfig:
    """Inputs of one queue experiment cell."""

    n_sources: int
    arrival_rate: float  # per-source Poisson rate while ON
    drift: float  # heavy-traffic slack constant, > 0
    on: PeriodDistribution
    off: PeriodDistribution
    service: ServiceDistribution
    regime: str = "N"  # "N" (source-count scaling) or "R" (time scaling)
    time_scale: float = 1.0  # R, only meaningful in the "R" regime
    horizon: float = 1.0

    def __post_init__(self):
        if self.n_sources < 1:
            raise ValueError("n_sources must be >= 1")
        if self.arrival_rate <= 0.0:
            raise ValueError("arrival_rate must be positive")
        if self.drift <= 0.0:
            raise ValueError("drift must be positive")
        if self.horizon <= 0.0:
            raise ValueError("horizon must be positive")
        if self.regime not in ("N", "R"):
            raise ValueError(f"regime must be 'N' or 'R', got {self.regime!r}")
        if self.regime == "R" and self.time_scale < 1.0:
            raise ValueError("time_scale must be >= 1 in the R regime")

    @property
    def on_fraction(self) -> float:
        return self.on.mean / (self.on.mean + self.off.mean)


@dataclass(frozen=True)
class QueueTrace:
    """Grid-sampled record of one run.

    ``queue`` is integer-valued and starts at 0; ``busy`` is
    non-decreasing, 1-Lipschitz and bounded by t; ``workload`` is
    nonnegative.  ``n_arrivals`` and ``n_departures`` are counted up to
    the last grid point.
    """

    times: np.ndarray
    queue: np.ndarray
    workload: np.ndarray
    busy: np.ndarray
    n_arrivals: int
    n_departures: int
    mu: float


def service_rate_n(cfg: QueueConfig) -> float:
    """Source-count rate rule: total mean input rate plus drift * sqrt(N)."""
    if cfg.regime != "N":
        raise ValueError("service_rate_n applies to the N regime")
    n = cfg.n_sources
    return n * cfg.arrival_rate * cfg.on_fraction + cfg.drift * np.sqrt(n)


def service_rate_r(cfg: QueueConfig, params: "LimitParams") -> float:
    """Time-scale rate rule: the drift term shrinks like the normalizer of
    the long-range-dependent fluctuation, so it needs a heavy tail."""
    if cfg.regime != "R":
        raise ValueError("service_rate_r applies to the R regime")
    if params.alpha_min >= 2.0:
        raise ValueError("time-scale rate rule requires an infinite-variance period law")
    n, r = cfg.n_sources, cfg.time_scale
    slack = cfg.drift * np.sqrt(n * r ** (1.0 - params.alpha_min) * params.tail_c)
    return n * cfg.arrival_rate * cfg.on_fraction + slack


def fifo_trace(arrival_epochs, work, grid, mu) -> QueueTrace:
    """Run the FIFO engine on explicit arrival epochs and work durations.

    ``work`` is already in time units (unit-mean samples / mu).
    """
    arrival_epochs = np.asarray(arrival_epochs, dtype=np.float64)
    work = np.asarray(work, dtype=np.float64)
    grid = np.asarray(grid, dtype=np.float64)
    if arrival_epochs.size != work.size:
        raise ValueError("one work amount per arrival required")

    if arrival_epochs.size == 0:
        zero = np.zeros_like(grid)
        return QueueTrace(grid, zero.astype(np.int64), zero, zero, 0, 0, float(mu))

    departures = _kernels.fifo_departures(arrival_epochs, work)

    arrived = np.searchsorted(arrival_epochs, grid, side="right")
    departed = np.searchsorted(departures, grid, side="right")
    queue = arrived - departed

    # idle time accrues before each job's start and after the last departure
    idle_gap = np.maximum(arrival_epochs - np.concatenate(([0.0], departures[:-1])), 0.0)
    cum_idle = np.concatenate(([0.0], np.cumsum(idle_gap)))
    last_dep = np.concatenate(([0.0], departures))
    idle = np.where(
        arrived > 0,
        cum_idle[arrived] + np.maximum(grid - last_dep[arrived], 0.0),
        grid,
    )
    busy = grid - idle

    cum_work = np.concatenate(([0.0], np.cumsum(work)))
    workload = cum_work[arrived] - busy

    n_arr = int(arrived[-1])
    n_dep = int(departed[-1])
    return QueueTrace(grid, queue.astype(np.int64), workload, busy, n_arr, n_dep, float(mu))


def simulate_queue(arrivals: ArrivalStream, svc: ServiceDistribution, mu, grid, rng) -> QueueTrace:
    """Sample work for each arrival and run the FIFO engine.

    Work samples are drawn in arrival order, which for a single FIFO
    server is also the service-start order.
    """
    if mu <= 0.0:
        raise ValueError("service rate must be positive")
    grid = np.asarray(grid, dtype=np.float64)
    if grid.size and grid[-1] > arrivals.horizon:
        raise ValueError("grid extends past the arrival horizon")
    work = np.atleast_1d(svc.sample(rng, arrivals.n_arrivals)) / mu
    return fifo_trace(arrivals.epochs, work, grid, mu)


def lindley_workload(arrival_epochs, work, grid):
    """Workload by the arrival-epoch recursion plus linear drain.

    Independent cross-check of the event engine: a plain Python sweep over
    arrivals and grid points in time order.  Grid points tied with an
    arrival epoch see the post-jump value, matching the engine's
    right-continuous counting.
    """
    arrival_epochs = np.asarray(arrival_epochs, dtype=np.float64)
    work = np.asarray(work, dtype=np.float64)
    grid = np.asarray(grid, dtype=np.float64)

    out = np.empty_like(grid)
    level = 0.0
    clock = 0.0
    i = 0
    n = arrival_epochs.size
    for k, t in enumerate(grid):
        while i < n and arrival_epochs[i] <= t:
            level = max(level - (arrival_epochs[i] - clock), 0.0) + work[i]
            clock = arrival_epochs[i]
            i += 1
        out[k] = max(level - (t - clock), 0.0)
    return out
