"""Counter-based random streams.

Every block of trials draws from its own Philox generator whose key is
``(master_seed, tag, block, extra...)``. Nothing depends on which worker
runs the block or in what order blocks complete.
"""

from __future__ import annotations

import numpy as np

# stream tags, one per estimator so that estimators never share draws
TAG_OUTAGE = 1
TAG_PROFILE = 2
TAG_RATE = 3
TAG_MULTIHOP = 4
TAG_DUALITY = 5
TAG_CAMPBELL = 6
TAG_LAPLACE = 7


def stream(master_seed, tag, block, *extra):
    seq = np.random.SeedSequence(int(master_seed), spawn_key=(int(tag), int(block), *map(int, extra)))
    return np.random.Generator(np.random.Philox(seq))
