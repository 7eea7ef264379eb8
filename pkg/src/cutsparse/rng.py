"""Counter-based per-edge uniforms.

Every random decision is a function of ``(seed, stream, edge index)``: the
Philox generator is keyed by ``(seed, stream)`` and the ``i``-th double it
emits belongs to edge ``i``.  Results therefore do not depend on the order in
which edges are visited.
"""

from __future__ import annotations

import numpy as np

STREAM_COMPRESS = 1
STREAM_UNIFORM = 2
STREAM_DIVISION = 3

_MASK64 = (1 << 64) - 1


def edge_uniforms(seed: int, count: int, stream: int) -> np.ndarray:
    """``count`` uniforms in ``[0, 1)``; entry ``i`` depends only on (seed, stream, i)."""
    key = np.array([int(seed) & _MASK64, int(stream) & _MASK64], dtype=np.uint64)
    gen = np.random.Generator(np.random.Philox(key=key))
    return gen.random(count)
