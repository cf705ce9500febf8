"""
Description: seeded random streams. A stream is the pair (seed, stream_id); the
harness hands stream_id = sweep point index to each run so that points drawn in
parallel never share a sequence.
"""
from dataclasses import dataclass

import numpy as np

SEED_MASK = (1 << 64) - 1

# substream indices
RUN_SUBSTREAM = 0
SETUP_SUBSTREAM = 1


@dataclass(frozen=True)
class RngStream:
    seed: int
    stream_id: int = 0

    def __post_init__(self):
        if self.seed < 0 or self.seed > SEED_MASK:
            raise ValueError(f"seed must be a 64-bit unsigned integer, got {self.seed}")
        if self.stream_id < 0:
            raise ValueError(f"stream_id must be >= 0, got {self.stream_id}")

    def generator(self, substream: int = RUN_SUBSTREAM) -> np.random.Generator:
        """Build a fresh generator; equal (seed, stream_id, substream) give equal draws.

        Args:
            substream (int, optional): 0 for stepping, 1 for one-time model setup.

        Returns:
            np.random.Generator: PCG64 generator seeded through a SeedSequence spawn key.
        """
        seq = np.random.SeedSequence(self.seed, spawn_key=(self.stream_id, substream))
        return np.random.Generator(np.random.PCG64(seq))

    def with_stream(self, stream_id: int) -> "RngStream":
        return RngStream(self.seed, stream_id)
