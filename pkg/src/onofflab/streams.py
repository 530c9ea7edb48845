"""Counter-based random streams derived from a root seed and labels.

Every stochastic component of an experiment owns a stream keyed by
``(root_seed, *labels)``.  Keys are hashed into a Philox counter-based
generator, so the draws a component sees never depend on how many other
streams exist or in which order workers touch them.
"""

import hashlib

import numpy as np

_SEP = "\x1f"


def derive_stream(root_seed, *labels):
    """Return a ``numpy.random.Generator`` keyed by the label tuple.

    Identical tuples give identical streams; tuples differing in any
    label give statistically independent streams.
    """
    tag = _SEP.join(str(part) for part in (root_seed, *labels))
    digest = hashlib.sha256(tag.encode("utf-8")).digest()
    key = int.from_bytes(digest[:16], "little")
    return np.random.Generator(np.random.Philox(key=key))
