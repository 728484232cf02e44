"""Reproducible 64-bit linear congruential generator.

All sampled checks in the package draw randomness from this one
generator so that reports are bit-reproducible across platforms and
languages.  Constants are Knuth's MMIX multiplier/increment:

    state <- (6364136223846793005 * state + 1442695040888963407) mod 2^64

Coefficient draws come from the small symmetric range {-2..2} unless a
caller asks otherwise.
"""

from __future__ import annotations

from fractions import Fraction

_MUL = 6364136223846793005
_INC = 1442695040888963407
_MASK = (1 << 64) - 1


class Lcg64:
    """Deterministic stream of small exact coefficients."""

    def __init__(self, seed: int):
        self.state = seed & _MASK

    def next_u64(self) -> int:
        self.state = (_MUL * self.state + _INC) & _MASK
        return self.state

    def below(self, n: int) -> int:
        """Uniform-ish integer in [0, n) from the high bits."""
        return (self.next_u64() >> 33) % n

    def coefficient(self, lo: int = -2, hi: int = 2) -> Fraction:
        """Exact integer coefficient in [lo, hi]."""
        return Fraction(lo + self.below(hi - lo + 1))

    def choice(self, seq):
        return seq[self.below(len(seq))]
