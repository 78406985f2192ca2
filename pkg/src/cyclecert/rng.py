"""Deterministic counter-based randomness.

Every random decision in the package is a pure function of (seed, counter),
so results are reproducible across runs, platforms and iteration orders.
"""

from __future__ import annotations

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def splitmix64(x: int) -> int:
    """One splitmix64 scramble step on a 64-bit word."""
    x = (x + _GOLDEN) & _MASK64
    z = x
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def keyed_word(seed: int, index: int) -> int:
    """64-bit hash of (seed, index), independent of call order."""
    return splitmix64(splitmix64(seed & _MASK64) ^ (index & _MASK64))


def keyed_unit(seed: int, index: int) -> float:
    """Uniform float in [0, 1) keyed by (seed, index)."""
    return (keyed_word(seed, index) >> 11) / float(1 << 53)


def derive_seed(seed: int, index: int) -> int:
    """Split one top-level seed into independent per-trial seeds."""
    return keyed_word(seed, (index << 1) | 1)


class Stream:
    """Sequential generator over the same splitmix64 core.

    Used where an order-dependent stream is the natural fit
    (shuffles, ad hoc draws); still fully determined by the seed.
    """

    def __init__(self, seed: int):
        self._state = splitmix64(seed & _MASK64)
        self._counter = 0

    def next_word(self) -> int:
        self._counter += 1
        return keyed_word(self._state, self._counter)

    def randrange(self, n: int) -> int:
        if n <= 0:
            raise ValueError("randrange needs n >= 1")
        # rejection sampling keeps the draw unbiased
        limit = (_MASK64 + 1) - ((_MASK64 + 1) % n)
        while True:
            w = self.next_word()
            if w < limit:
                return w % n

    def shuffle(self, items: list) -> None:
        """In-place Fisher-Yates shuffle."""
        for i in range(len(items) - 1, 0, -1):
            j = self.randrange(i + 1)
            items[i], items[j] = items[j], items[i]
