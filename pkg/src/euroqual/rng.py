"""Deterministic random-stream construction and shared shuffle helpers.

Every simulated season draws from its own counter-based substream keyed by
``(master_seed, stream_index)``.  Distinct indices give statistically
independent streams, and the stream for a given pair is identical no matter
which process or worker creates it, which is what makes parallel tallies
reproducible bit for bit.
"""

from __future__ import annotations

import numpy as np

# Generators and kernels must agree on these draw primitives; see
# engine.run_iteration for the full per-season draw schedule.

RandomStream = np.random.Generator


def make_stream(master_seed: int, stream_index: int) -> RandomStream:
    """Return the generator for substream ``stream_index`` of ``master_seed``."""
    if master_seed < 0 or stream_index < 0:
        raise ValueError("master_seed and stream_index must be non-negative")
    key = np.array([master_seed, stream_index], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def derive_master_seed(master_seed: int, tag: int) -> int:
    """Derive an independent 64-bit master seed, e.g. one per scenario.

    Used when one experiment runs several full simulations (counterfactual
    pairs, sensitivity sweeps) that must not share iteration substreams.
    """
    ss = np.random.SeedSequence(entropy=master_seed, spawn_key=(1, tag))
    return int(ss.generate_state(1, np.uint64)[0])


class StreamPool:
    """Re-keys a single Philox generator instead of rebuilding it per season.

    Produces exactly the same stream as ``make_stream`` for every index
    (asserted in the test suite); it only exists because constructing a fresh
    bit generator a million times is measurably slower than re-keying one.
    """

    def __init__(self, master_seed: int):
        if master_seed < 0:
            raise ValueError("master_seed must be non-negative")
        self._master = master_seed
        self._bitgen = np.random.Philox(key=np.array([master_seed, 0], dtype=np.uint64))
        self._gen = np.random.Generator(self._bitgen)
        self._state = self._bitgen.state

    def stream(self, stream_index: int) -> RandomStream:
        st = self._state
        inner = st["state"]
        inner["key"][0] = self._master
        inner["key"][1] = stream_index
        inner["counter"][:] = 0
        st["buffer_pos"] = 4
        st["has_uint32"] = 0
        st["uinteger"] = 0
        self._bitgen.state = st
        return self._gen


def shuffle_ints(rng: RandomStream, items: list[int]) -> None:
    """Fisher-Yates shuffle drawing ``len(items) - 1`` bounded integers.

    The compiled kernel replays this exact draw order, so the loop shape is
    part of the stream contract: indices n-1 .. 1, one ``integers(0, i + 1)``
    each.
    """
    for i in range(len(items) - 1, 0, -1):
        j = int(rng.integers(0, i + 1))
        items[i], items[j] = items[j], items[i]
