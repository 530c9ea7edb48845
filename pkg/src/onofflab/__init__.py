"""onofflab: heavy-traffic limit laboratory for Poisson ON/OFF queues.

Simulates FIFO queues fed by superposed stationary ON/OFF sources whose
period laws may have infinite variance, simulates the matching reflected
Gaussian and reflected-FBM limit processes exactly, and runs the canned
statistical experiments that compare the two at desk scale.
"""

from ._kernels import BACKEND as kernel_backend
from .distributions import (
    Deterministic,
    DeterministicService,
    Exponential,
    ExponentialService,
    Pareto,
    TwoPointService,
    UniformPositive,
    period_distribution,
    service_distribution,
    tail_constant,
)
from .gaussian import (
    OnTimeCovariance,
    brownian_path,
    fbm_limit_queue,
    fbm_path,
    fgn,
    fluctuation_path,
    gaussian_limit_queue,
    reflect,
)
from .limits import (
    LimitParams,
    choose_n_fast_growth,
    limit_params,
    normalizer_d_r,
    on_fraction,
    scale_n,
    scale_r,
    uv_diagnostic,
)
from .paths import SampledPath, uniform_grid
from .queueing import (
    QueueConfig,
    QueueTrace,
    fifo_trace,
    lindley_workload,
    service_rate_n,
    service_rate_r,
    simulate_queue,
)
from .sources import (
    ArrivalStream,
    BinarySourcePath,
    SuperpositionPath,
    arrivals_direct,
    arrivals_modulated,
    cumulative_on_time,
    merge_streams,
    poisson_stream,
    simulate_source,
    simulate_sources,
    superpose,
)
from .stats import (
    Ensemble,
    collapse_gap,
    empirical_variance_curve,
    estimate_hurst,
    ks_two_sample,
    marginal_convergence_report,
)
from .streams import derive_stream

__version__ = "0.1.0"
