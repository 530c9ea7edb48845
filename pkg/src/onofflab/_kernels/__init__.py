"""Event-array kernels: compiled core with a NumPy prefix-scan fallback.

The two kernels are the only sequential recursions on the hot path of a
replication, so they exist twice: a Cython extension built at install
time and a pure NumPy formulation.  The compiled core is preferred when
importable; set ONOFFLAB_KERNELS=python to force the fallback (used by
the backend-equivalence tests and benchmarks/bench_kernels.py).
"""

import os

_forced = os.environ.get("ONOFFLAB_KERNELS", "").strip().lower()

if _forced in {"python", "numpy"}:
    from ._numpy import fifo_departures, running_regulator

    BACKEND = "numpy"
elif _forced in {"compiled", "c", "cython"}:
    from ._core import fifo_departures, running_regulator

    BACKEND = "compiled"
else:
    try:
        from ._core import fifo_departures, running_regulator

        BACKEND = "compiled"
    except ImportError:
        from ._numpy import fifo_departures, running_regulator

        BACKEND = "numpy"

__all__ = ["BACKEND", "fifo_departures", "running_regulator"]
