"""Uniform-grid sampled paths, the common currency of scaling and statistics."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = ["SampledPath", "uniform_grid"]


def uniform_grid(step: float, horizon: float) -> np.ndarray:
    """Grid 0, step, ..., horizon; horizon must be a multiple of step.

    Built with linspace so both endpoints are exact (no ulp overshoot
    past the horizon).
    """
    if step <= 0.0 or horizon <= 0.0:
        raise ValueError("step and horizon must be positive")
    n = horizon / step
    if abs(n - round(n)) > 1e-9:
        raise ValueError(f"horizon {horizon} is not a multiple of step {step}")
    return np.linspace(0.0, horizon, round(n) + 1)


@dataclass(frozen=True)
class SampledPath:
    """Values of one process on a uniform grid starting at 0."""

    times: np.ndarray
    values: np.ndarray
    name: str = ""

    def __post_init__(self):
        times = np.asarray(self.times, dtype=np.float64)
        values = np.asarray(self.values, dtype=np.float64)
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "values", values)
        if times.shape != values.shape or times.ndim != 1 or times.size < 2:
            raise ValueError("times and values must be matching 1-D arrays of length >= 2")
        if times[0] != 0.0:
            raise ValueError("grid must start at 0")
        steps = np.diff(times)
        if not np.allclose(steps, steps[0], rtol=1e-9, atol=1e-12) or steps[0] <= 0.0:
            raise ValueError("grid must be uniform and increasing")

    @property
    def step(self) -> float:
        return float(self.times[1] - self.times[0])

    def at(self, t):
        """Value at grid time(s) t; t must sit on the grid."""
        idx = np.rint(np.asarray(t, dtype=np.float64) / self.step).astype(np.int64)
        if np.any(np.abs(idx * self.step - t) > 1e-9 * max(1.0, self.step)):
            raise ValueError("query time is not a grid point")
        out = self.values[idx]
        return out if out.ndim else float(out)
