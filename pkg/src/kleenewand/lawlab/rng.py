"""SplitMix64, the seeded generator behind every law case.

The algorithm is fixed bit-for-bit so that other implementations can
reproduce the same case sequence::

    state  <- (state + 0x9E3779B97F4A7C15) mod 2^64
    z      <- state
    z      <- (z xor (z >> 30)) * 0xBF58476D1CE4E5B9 mod 2^64
    z      <- (z xor (z >> 27)) * 0x94D049BB133111EB mod 2^64
    output <- z xor (z >> 31)

Derived quantities:

* ``below(n)`` is ``(next() * n) >> 64`` (multiply-high, no rejection);
* ``random()`` is ``(next() >> 11) * 2^-53``;
* ``derive(seed, i)`` is the ``i``-th output (counting from 0) of a fresh
  generator seeded with ``seed``; case ``i`` of a law run with seed ``s``
  draws from ``SplitMix64(derive(s, i))``.

Because ``derive`` is a pure function of ``(seed, i)``, cases can be
generated in any order and on any worker.

The standard library's ``random`` module is not used here: its Mersenne
Twister stream is not specified across versions, and the harness needs a
stream that is documented down to the bit.
"""

from __future__ import annotations

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15
MIX1 = 0xBF58476D1CE4E5B9
MIX2 = 0x94D049BB133111EB


def mix64(z: int) -> int:
    """The SplitMix64 output function."""
    z = ((z ^ (z >> 30)) * MIX1) & MASK64
    z = ((z ^ (z >> 27)) * MIX2) & MASK64
    return z ^ (z >> 31)


def derive(seed: int, index: int) -> int:
    """Output number ``index`` of ``SplitMix64(seed)``, computed directly."""
    if index < 0:
        raise ValueError("index must be nonnegative")
    return mix64((seed + (index + 1) * GOLDEN) & MASK64)


class SplitMix64:
    __slots__ = ("state",)

    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + GOLDEN) & MASK64
        return mix64(self.state)

    def below(self, n: int) -> int:
        """A value in ``0..n-1``."""
        if n <= 0:
            raise ValueError("below() needs a positive bound, got %d" % n)
        return (self.next_u64() * n) >> 64

    def between(self, lo: int, hi: int) -> int:
        """A value in ``lo..hi`` inclusive."""
        return lo + self.below(hi - lo + 1)

    def random(self) -> float:
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))

    def chance(self, p: float) -> bool:
        return self.random() < p

    def choice(self, seq):
        return seq[self.below(len(seq))]

    def shuffle(self, items: list) -> list:
        """Fisher-Yates in place, drawing ``below(i + 1)`` for ``i`` from the top."""
        for i in range(len(items) - 1, 0, -1):
            j = self.below(i + 1)
            items[i], items[j] = items[j], items[i]
        return items

    def split(self) -> SplitMix64:
        """An independent child generator seeded from the next output."""
        return SplitMix64(self.next_u64())


def as_rng(seed_or_rng: int | SplitMix64) -> SplitMix64:
    if isinstance(seed_or_rng, SplitMix64):
        return seed_or_rng
    return SplitMix64(int(seed_or_rng))
