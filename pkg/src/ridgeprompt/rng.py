"""A small, fully specified random generator for reproducible sampling.

Prompt selection must reproduce bit-identically from a seed across platforms,
interpreter versions, and reimplementations, so the generator is pinned here
instead of delegating to library defaults:

* state: xoshiro256** (Blackman & Vigna), four 64-bit words;
* seeding: the 64-bit seed is expanded into the four state words with
  splitmix64 (seed values are reduced modulo 2**64 first);
* bounded integers: rejection sampling on the high bits is avoided in favor
  of the simple threshold method, rejecting draws above the largest multiple
  of n below 2**64, so every residue is exactly equally likely;
* sampling without replacement: a partial Fisher-Yates shuffle drawing k
  items from the front.
"""

from __future__ import annotations

from .errors import InvalidParameterError

_MASK64 = (1 << 64) - 1


def _splitmix64(state: int):
    state = (state + 0x9E3779B97F4A7C15) & _MASK64
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return state, z ^ (z >> 31)


def _rotl(x: int, k: int) -> int:
    return ((x << k) | (x >> (64 - k))) & _MASK64


class Xoshiro256StarStar:
    """Deterministic 64-bit generator; equal seeds give equal streams forever."""

    def __init__(self, seed: int):
        state = int(seed) & _MASK64
        words = []
        for _ in range(4):
            state, word = _splitmix64(state)
            words.append(word)
        # an all-zero state would be absorbing; splitmix64 cannot produce it
        self._s = words

    def next_uint64(self) -> int:
        s0, s1, s2, s3 = self._s
        result = (_rotl((s1 * 5) & _MASK64, 7) * 9) & _MASK64
        t = (s1 << 17) & _MASK64
        s2 ^= s0
        s3 ^= s1
        s1 ^= s2
        s0 ^= s3
        s2 ^= t
        s3 = _rotl(s3, 45)
        self._s = [s0, s1, s2, s3]
        return result

    def randbelow(self, n: int) -> int:
        """Uniform integer in [0, n), unbiased via threshold rejection."""
        if n <= 0:
            raise InvalidParameterError(f"randbelow needs n >= 1, got {n}")
        if n == 1:
            return 0
        threshold = (1 << 64) - ((1 << 64) % n)
        while True:
            r = self.next_uint64()
            if r < threshold:
                return r % n

    def sample(self, items, k: int) -> list:
        """Draw k items uniformly without replacement (partial Fisher-Yates).

        The input order defines the sampled population's indexing, so callers
        must pass a canonically ordered sequence for reproducibility.
        """
        pool = list(items)
        n = len(pool)
        if k < 0 or k > n:
            raise InvalidParameterError(f"cannot sample {k} of {n} items")
        for i in range(k):
            j = i + self.randbelow(n - i)
            pool[i], pool[j] = pool[j], pool[i]
        return pool[:k]
