"""Counter-based deterministic random streams.

SplitMix64 keyed by (seed, counter...) so that trial i of an experiment is
reproducible independently of execution order or parallelism.
"""

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15


def _mix(z: int) -> int:
    z &= MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def derive_key(seed: int, *counters: int) -> int:
    """Fold counters into a 64-bit key, order-sensitively."""
    key = _mix(seed & MASK64)
    for c in counters:
        key = _mix((key + GOLDEN + (c & MASK64)) & MASK64)
    return key


class Stream:
    """A SplitMix64 stream of 64-bit words with uniform-range helpers."""

    def __init__(self, seed: int, *counters: int):
        self._state = derive_key(seed, *counters)

    def next_u64(self) -> int:
        self._state = (self._state + GOLDEN) & MASK64
        return _mix(self._state)

    def randint(self, lo: int, hi: int) -> int:
        """Uniform integer in [lo, hi], rejection-sampled (unbiased)."""
        if lo > hi:
            raise ValueError("empty range")
        span = hi - lo + 1
        limit = (1 << 64) - ((1 << 64) % span)
        while True:
            u = self.next_u64()
            if u < limit:
                return lo + (u % span)
