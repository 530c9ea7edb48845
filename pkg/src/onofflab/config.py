"""Experiment configuration: JSON file schema, validation, CLI overrides.

A config is one flat JSON object.  Every experiment shares the core keys
(seed, replications, distributions, grid); ladder and tolerance keys only
matter to the experiments that read them.  Unknown keys and out-of-range
values are rejected with the offending key named.  The root seed is
mandatory: no wall-clock seeding, ever.

Precedence: command-line flags (--seed, --out, --workers, and the
subcommand itself) override file keys.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, fields

from .distributions import (
    PeriodDistribution,
    ServiceDistribution,
    period_distribution,
    service_distribution,
)

__all__ = ["ConfigError", "ExperimentConfig", "load_config", "EXPERIMENTS"]

EXPERIMENTS = (
    "params",
    "simulate",
    "lemma1",
    "theorem1",
    "theorem2",
    "collapse",
    "variance-curve",
    "hurst",
)


class ConfigError(ValueError):
    """Invalid configuration; the message names the offending key."""


@dataclass
class ExperimentConfig:
    experiment: str
    seed: int
    out_dir: str = "results"
    workers: int = 1
    replications: int = 200
    limit_replications: int | None = None  # defaults to replications
    arrival_rate: float = 1.0
    drift: float = 1.0
    on: PeriodDistribution = None
    off: PeriodDistribution = None
    service: ServiceDistribution = None
    source_ladder: list = field(default_factory=lambda: [10, 100, 1000])
    scale_ladder: list = field(default_factory=lambda: [10, 30, 100])
    pinned_sources: int | None = None
    growth_exponent: float = 0.5
    growth_prefactor: float = 1.0
    grid_step: float = 1.0
    limit_grid_step: float = 0.01  # finer grid for the limit draw's reflection
    horizon: float = 10.0
    scaled_grid_step: float = 0.05
    scaled_horizon: float = 1.0
    times: list = field(default_factory=lambda: [2.0, 5.0])
    cov_mode: str = "auto"  # auto | markov-exact | asymptotic-heavy
    n_sources: int = 100
    hurst_values: list = field(default_factory=lambda: [0.55, 0.65, 0.75, 0.85])
    series_length: int = 2048
    hurst_replications: int = 64
    hurst_sources: int = 50
    hurst_tolerance: float = 0.05
    hurst_band: list = field(default_factory=lambda: [0.65, 0.85])
    variance_rel_tol: float = 0.05
    variance_slope_tol: float = 0.10
    export_arrivals: bool = False

    def __post_init__(self):
        if self.experiment not in EXPERIMENTS:
            raise ConfigError(f"experiment: unknown experiment {self.experiment!r}; expected one of {EXPERIMENTS}")
        if self.seed is None:
            raise ConfigError("seed: a root seed is required (no wall-clock seeding)")
        if self.on is None:
            self.on = period_distribution("exponential", mean=1.0)
        if self.off is None:
            self.off = period_distribution("exponential", mean=1.0)
        if self.service is None:
            self.service = service_distribution("deterministic")
        if self.limit_replications is None:
            self.limit_replications = self.replications
        self._check_positive_int("replications", self.replications)
        self._check_positive_int("limit_replications", self.limit_replications)
        self._check_positive_int("workers", self.workers)
        self._check_positive_int("n_sources", self.n_sources)
        self._check_positive_int("series_length", self.series_length)
        self._check_positive_int("hurst_replications", self.hurst_replications)
        self._check_positive_int("hurst_sources", self.hurst_sources)
        for key in ("arrival_rate", "drift", "grid_step", "limit_grid_step", "horizon",
                    "scaled_grid_step", "scaled_horizon", "growth_exponent", "growth_prefactor",
                    "hurst_tolerance", "variance_rel_tol", "variance_slope_tol"):
            value = getattr(self, key)
            if not isinstance(value, (int, float)) or value <= 0:
                raise ConfigError(f"{key}: must be a positive number, got {value!r}")
        self._check_ladder("source_ladder", self.source_ladder)
        self._check_ladder("scale_ladder", self.scale_ladder)
        if self.pinned_sources is not None:
            self._check_positive_int("pinned_sources", self.pinned_sources)
        if not self.times or any(t <= 0 for t in self.times):
            raise ConfigError(f"times: need positive checkpoint times, got {self.times!r}")
        if self.cov_mode not in ("auto", "markov-exact", "asymptotic-heavy"):
            raise ConfigError(f"cov_mode: unknown mode {self.cov_mode!r}")
        if len(self.hurst_band) != 2 or not self.hurst_band[0] < self.hurst_band[1]:
            raise ConfigError(f"hurst_band: need [low, high] with low < high, got {self.hurst_band!r}")
        if any(not 0.0 < h < 1.0 for h in self.hurst_values):
            raise ConfigError(f"hurst_values: entries must lie in (0, 1), got {self.hurst_values!r}")

    @staticmethod
    def _check_positive_int(key, value):
        if not isinstance(value, int) or isinstance(value, bool) or value < 1:
            raise ConfigError(f"{key}: must be an integer >= 1, got {value!r}")

    @staticmethod
    def _check_ladder(key, ladder):
        if not ladder or any(not isinstance(v, int) or v < 1 for v in ladder):
            raise ConfigError(f"{key}: must be a nonempty list of integers >= 1, got {ladder!r}")
        if any(b <= a for a, b in zip(ladder, ladder[1:])):
            raise ConfigError(f"{key}: must be strictly increasing, got {ladder!r}")


def _build_distribution(key, raw, builder):
    if not isinstance(raw, dict) or "kind" not in raw:
        raise ConfigError(f"{key}: expected an object with a 'kind' field, got {raw!r}")
    params = {k: v for k, v in raw.items() if k != "kind"}
    try:
        return builder(raw["kind"], **params)
    except ValueError as exc:
        raise ConfigError(f"{key}: {exc}") from None


def config_from_dict(data: dict, overrides: dict | None = None) -> ExperimentConfig:
    """Build and validate a config from parsed JSON plus CLI overrides."""
    if not isinstance(data, dict):
        raise ConfigError("config: top level must be a JSON object")
    data = dict(data)
    for key, value in (overrides or {}).items():
        if value is not None:
            data[key] = value

    known = {f.name for f in fields(ExperimentConfig)}
    unknown = set(data) - known
    if unknown:
        raise ConfigError(f"{sorted(unknown)[0]}: unknown config key")
    if "experiment" not in data:
        raise ConfigError("experiment: missing (pass a subcommand or set it in the file)")
    if "seed" not in data:
        raise ConfigError("seed: a root seed is required (no wall-clock seeding)")

    for key, builder in (("on", period_distribution), ("off", period_distribution)):
        if key in data:
            data[key] = _build_distribution(key, data[key], builder)
    if "service" in data:
        data["service"] = _build_distribution("service", data["service"], service_distribution)

    return ExperimentConfig(**data)


def load_config(path, overrides: dict | None = None) -> ExperimentConfig:
    """Read a JSON config file and apply CLI overrides."""
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except FileNotFoundError:
        raise ConfigError(f"config: file not found: {path}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config: invalid JSON in {path}: {exc}") from None
    return config_from_dict(data, overrides)
