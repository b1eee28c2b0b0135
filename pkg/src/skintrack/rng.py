"""Deterministic pseudo-random number generation.

Everything that needs reproducible randomness (weight initialisation,
negative-sample generation, synthetic fixtures) draws from the SplitMix64
generator defined here, so that any reimplementation can reproduce the
exact same streams from the same integer seed.

Stream definition, normative for this package:

    state <- (state + 0x9E3779B97F4A7C15) mod 2^64
    z <- state
    z <- ((z XOR (z >> 30)) * 0xBF58476D1CE4E5B9) mod 2^64
    z <- ((z XOR (z >> 27)) * 0x94D049BB133111EB) mod 2^64
    output <- z XOR (z >> 31)

Derived draws:
  * float in [0, 1):       (output >> 11) * 2^-53
  * weight in [-0.5, 0.5): float draw minus 0.5 (exact in IEEE 754)
  * 8-bit channel [0,255]: output >> 56 (top 8 bits)

Seeds are reduced modulo 2^64, so negative Python ints are accepted.
"""

_MASK64 = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15


class SplitMix64:
    def __init__(self, seed: int):
        self._state = seed & _MASK64

    def next_u64(self) -> int:
        self._state = (self._state + _GAMMA) & _MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def next_float(self) -> float:
        """Uniform float in [0, 1) with 53 random bits."""
        return (self.next_u64() >> 11) * 2.0**-53

    def next_weight(self) -> float:
        """Uniform float in [-0.5, 0.5)."""
        return self.next_float() - 0.5

    def next_channel(self) -> int:
        """Uniform integer in [0, 255]."""
        return self.next_u64() >> 56
