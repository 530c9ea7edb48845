"""Stationary ON/OFF binary sources, their superposition, and arrivals.

A source alternates between ON and OFF phases with i.i.d. period lengths
per phase.  Stationarity is achieved by the classical renewal
construction: the initial phase is ON with probability
mean_on / (mean_on + mean_off) and the remaining length of that first
period follows the equilibrium residual law of the active phase.

Two arrival constructions are provided.  The direct one attaches a
Poisson clock to each source that runs only while the source is ON.  The
modulated one runs a single Poisson clock on the cumulative-ON-time axis
of the whole superposition and maps the points back through the inverse
of the cumulative ON time.  The two produce the same law for the pooled
arrival process, which the statistics module tests.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .distributions import PeriodDistribution

__all__ = [
    "BinarySourcePath",
    "SuperpositionPath",
    "ArrivalStream",
    "simulate_source",
    "simulate_sources",
    "superpose",
    "cumulative_on_time",
    "arrivals_direct",
    "arrivals_modulated",
    "merge_streams",
    "poisson_stream",
]


def _inverse_piecewise(boundaries, values, slopes, s):
    """Map levels back through a continuous non-decreasing piecewise-linear
    function (first crossing time, i.e. the right-continuous inverse)."""
    s = np.asarray(s, dtype=np.float64)
    j = np.searchsorted(values, s, side="left")
    j = np.clip(j, 1, len(values) - 1)
    slope = slopes[j - 1]
    safe = np.where(slope > 0.0, slope, 1.0)
    t = boundaries[j - 1] + (s - values[j - 1]) / safe
    return np.where(s <= values[0], boundaries[0], t)


@dataclass(frozen=True)
class BinarySourcePath:
    """One source's alternating trajectory on [0, horizon].

    ``epochs`` are the phase-switch times, strictly increasing inside
    (0, horizon]; the state is right-continuous, so the new phase holds at
    its switch epoch.
    """

    initial_on: bool
    epochs: np.ndarray
    horizon: float

    def __post_init__(self):
        epochs = np.asarray(self.epochs, dtype=np.float64)
        object.__setattr__(self, "epochs", epochs)
        if self.horizon < 0.0:
            raise ValueError("horizon must be nonnegative")
        if epochs.size:
            if not np.all(np.diff(epochs) > 0.0):
                raise ValueError("switch epochs must be strictly increasing")
            if epochs[0] <= 0.0 or epochs[-1] > self.horizon:
                raise ValueError("switch epochs must lie in (0, horizon]")

    @cached_property
    def _boundaries(self):
        return np.concatenate(([0.0], self.epochs))

    @cached_property
    def _segment_on(self):
        n = self.epochs.size + 1
        on = np.arange(n) % 2 == 0
        return on if self.initial_on else ~on

    @cached_property
    def _cum_on(self):
        lengths = np.diff(np.concatenate((self._boundaries, [self.horizon])))
        cum = np.concatenate(([0.0], np.cumsum(lengths * self._segment_on)))
        return cum[:-1]

    def _check_times(self, t):
        t = np.asarray(t, dtype=np.float64)
        if np.any(t < 0.0) or np.any(t > self.horizon):
            raise ValueError("query time outside [0, horizon]")
        return t

    def state(self, t):
        """1 while ON, 0 while OFF."""
        t = self._check_times(t)
        seg = np.searchsorted(self.epochs, t, side="right")
        out = self._segment_on[seg].astype(np.int64)
        return out if out.ndim else int(out)

    def on_time(self, t):
        """Cumulative ON time up to t; non-decreasing and 1-Lipschitz."""
        t = self._check_times(t)
        seg = np.searchsorted(self.epochs, t, side="right")
        out = self._cum_on[seg] + self._segment_on[seg] * (t - self._boundaries[seg])
        return out if out.ndim else float(out)

    @cached_property
    def total_on_time(self) -> float:
        return float(self.on_time(self.horizon))

    def _inverse_on_time(self, s):
        boundaries = np.concatenate((self._boundaries, [self.horizon]))
        values = np.concatenate((self._cum_on, [self.total_on_time]))
        return _inverse_piecewise(boundaries, values, self._segment_on.astype(np.float64), s)


@dataclass(frozen=True)
class SuperpositionPath:
    """Pooled state of several sources: an integer step function counting
    how many are ON, plus its running integral."""

    n_sources: int
    horizon: float
    initial_count: int
    epochs: np.ndarray
    counts: np.ndarray  # active count on [epochs[k], epochs[k+1])

    @cached_property
    def _boundaries(self):
        return np.concatenate(([0.0], self.epochs))

    @cached_property
    def _levels(self):
        return np.concatenate(([self.initial_count], self.counts)).astype(np.float64)

    @cached_property
    def _cum_on(self):
        lengths = np.diff(np.concatenate((self._boundaries, [self.horizon])))
        cum = np.concatenate(([0.0], np.cumsum(lengths * self._levels)))
        return cum[:-1]

    def _check_times(self, t):
        t = np.asarray(t, dtype=np.float64)
        if np.any(t < 0.0) or np.any(t > self.horizon):
            raise ValueError("query time outside [0, horizon]")
        return t

    def count_at(self, t):
        """Number of sources ON at time t."""
        t = self._check_times(t)
        seg = np.searchsorted(self.epochs, t, side="right")
        out = self._levels[seg].astype(np.int64)
        return out if out.ndim else int(out)

    def on_time(self, t):
        """Aggregate cumulative ON time up to t (at most n_sources * t)."""
        t = self._check_times(t)
        seg = np.searchsorted(self.epochs, t, side="right")
        out = self._cum_on[seg] + self._levels[seg] * (t - self._boundaries[seg])
        return out if out.ndim else float(out)

    @cached_property
    def total_on_time(self) -> float:
        return float(self.on_time(self.horizon))

    def _inverse_on_time(self, s):
        boundaries = np.concatenate((self._boundaries, [self.horizon]))
        values = np.concatenate((self._cum_on, [self.total_on_time]))
        return _inverse_piecewise(boundaries, values, self._levels, s)


@dataclass(frozen=True)
class ArrivalStream:
    """Sorted arrival epochs on [0, horizon]."""

    epochs: np.ndarray
    horizon: float
    mode: str  # "direct" | "modulated"

    @property
    def n_arrivals(self) -> int:
        return int(self.epochs.size)

    def count(self, t):
        """Arrivals up to and including t."""
        out = np.searchsorted(self.epochs, np.asarray(t, dtype=np.float64), side="right")
        return out if out.ndim else int(out)


def _stationary_period_matrix(on, off, horizon, n, rng):
    """Draw switch epochs for n sources at once.

    Returns (initial_on, epoch_matrix, epoch_counts): row i of the matrix
    holds the cumulative switch times of source i, of which the first
    epoch_counts[i] fall strictly before the horizon.
    """
    gamma = on.mean / (on.mean + off.mean)
    initial_on = rng.random(n) < gamma
    first_u = rng.random(n)
    first = np.where(initial_on, on.residual_ppf(first_u), off.residual_ppf(first_u))

    blocks = [first[:, None]]
    totals = first.copy()
    drawn = 1
    block = max(4, int(2.2 * horizon / (on.mean + off.mean)) + 4)
    while totals.min() < horizon:
        u = rng.random((n, block))
        parity = (np.arange(drawn, drawn + block) % 2) == 0
        on_period = initial_on[:, None] == parity[None, :]
        periods = np.where(on_period, on.ppf(u), off.ppf(u))
        blocks.append(periods)
        totals += periods.sum(axis=1)
        drawn += block

    epochs = np.cumsum(np.concatenate(blocks, axis=1), axis=1)
    counts = (epochs < horizon).sum(axis=1)
    return initial_on, epochs, counts


def simulate_sources(on: PeriodDistribution, off: PeriodDistribution, horizon, n, rng):
    """Simulate n independent stationary sources on [0, horizon].

    Vectorized across sources: one uniform matrix drives all period draws,
    which keeps large batches cheap and reproducible.
    """
    if horizon < 0.0:
        raise ValueError("horizon must be nonnegative")
    if horizon == 0.0:
        gamma = on.mean / (on.mean + off.mean)
        phases = rng.random(n) < gamma
        return [BinarySourcePath(bool(p), np.empty(0), 0.0) for p in phases]
    initial_on, epochs, counts = _stationary_period_matrix(on, off, horizon, n, rng)
    return [
        BinarySourcePath(bool(initial_on[i]), epochs[i, : counts[i]].copy(), float(horizon))
        for i in range(n)
    ]


def simulate_source(on: PeriodDistribution, off: PeriodDistribution, horizon, rng) -> BinarySourcePath:
    """Simulate one stationary source on [0, horizon]."""
    return simulate_sources(on, off, horizon, 1, rng)[0]


def cumulative_on_time(path: BinarySourcePath, t):
    """Cumulative ON time of one source up to t."""
    return path.on_time(t)


def superpose(paths) -> SuperpositionPath:
    """Merge sources into the pooled ON-count step function."""
    paths = list(paths)
    if not paths:
        raise ValueError("need at least one source path")
    horizon = paths[0].horizon
    if any(p.horizon != horizon for p in paths):
        raise ValueError("source paths must share one horizon")

    times = []
    deltas = []
    for p in paths:
        m = p.epochs.size
        if m == 0:
            continue
        first = -1.0 if p.initial_on else 1.0
        sign = np.where(np.arange(m) % 2 == 0, first, -first)
        times.append(p.epochs)
        deltas.append(sign)
    initial_count = sum(int(p.initial_on) for p in paths)

    if not times:
        return SuperpositionPath(len(paths), horizon, initial_count, np.empty(0), np.empty(0))

    times = np.concatenate(times)
    deltas = np.concatenate(deltas)
    uniq, inverse = np.unique(times, return_inverse=True)
    jumps = np.bincount(inverse, weights=deltas, minlength=uniq.size)
    counts = initial_count + np.cumsum(jumps)
    return SuperpositionPath(len(paths), horizon, initial_count, uniq, counts)


def _poisson_points(rate, length, rng):
    # Poisson count plus sorted uniforms: exact in law, fixed draw budget.
    if length <= 0.0:
        return np.empty(0)
    k = int(rng.poisson(rate * length))
    return np.sort(rng.random(k)) * length


def arrivals_direct(path: BinarySourcePath, rate, rng) -> ArrivalStream:
    """Arrivals of one source: a rate-``rate`` Poisson clock that runs only
    while the source is ON."""
    if rate <= 0.0:
        raise ValueError("arrival rate must be positive")
    pts = _poisson_points(rate, path.total_on_time, rng)
    return ArrivalStream(path._inverse_on_time(pts), path.horizon, "direct")


def arrivals_modulated(sup: SuperpositionPath, rate, rng) -> ArrivalStream:
    """Pooled arrivals built from a single Poisson clock on the
    superposition's cumulative-ON-time axis."""
    if rate <= 0.0:
        raise ValueError("arrival rate must be positive")
    pts = _poisson_points(rate, sup.total_on_time, rng)
    return ArrivalStream(sup._inverse_on_time(pts), sup.horizon, "modulated")


def merge_streams(streams) -> ArrivalStream:
    """Pool per-source arrival streams into one."""
    streams = list(streams)
    if not streams:
        raise ValueError("need at least one stream")
    horizon = streams[0].horizon
    if any(s.horizon != horizon for s in streams):
        raise ValueError("streams must share one horizon")
    epochs = np.sort(np.concatenate([s.epochs for s in streams]))
    return ArrivalStream(epochs, horizon, streams[0].mode)


def poisson_stream(rate, horizon, rng) -> ArrivalStream:
    """Plain Poisson arrivals on [0, horizon] (an always-ON source)."""
    if rate <= 0.0:
        raise ValueError("arrival rate must be positive")
    return ArrivalStream(_poisson_points(rate, horizon, rng), horizon, "direct")
