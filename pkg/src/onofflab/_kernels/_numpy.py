"""NumPy formulations of the event-array kernels.

Both recursions unroll into prefix scans, so the fallback stays O(n) in
compiled code (``np.maximum.accumulate``) rather than a Python loop.
"""

import numpy as np


def fifo_departures(arrivals, work):
    """Departure epochs of a FIFO single-server queue started empty.

    Job i starts at max(arrival_i, departure_{i-1}) and departs after
    work_i more time units.  Unrolling the recursion,
    departure_i = C_i + max_{j<=i}(arrival_j - C_{j-1}) with C the
    cumulative work, which is a running maximum.
    """
    arrivals = np.asarray(arrivals, dtype=np.float64)
    work = np.asarray(work, dtype=np.float64)
    if arrivals.size == 0:
        return np.empty(0, dtype=np.float64)
    cum = np.cumsum(work)
    lag = np.empty_like(cum)
    lag[0] = 0.0
    lag[1:] = cum[:-1]
    return cum + np.maximum.accumulate(arrivals - lag)


def running_regulator(values):
    """Minimal non-decreasing push keeping values + push nonnegative.

    Equals the running maximum of the negative part of the path.
    """
    values = np.asarray(values, dtype=np.float64)
    if values.size == 0:
        return np.empty(0, dtype=np.float64)
    return np.maximum.accumulate(np.maximum(-values, 0.0))
