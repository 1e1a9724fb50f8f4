"""Project-fixed pseudo-random generation.

Cohort synthesis, threshold sampling, and the optimizer all draw from one
generator family so that every seeded run is reproducible bit-for-bit across
reruns and, given the documentation below, across reimplementations of this
engine version.

Algorithms, in full:

* Seeding (splitmix64): the 64-bit seed is the splitmix64 state; each output
  advances the state by 0x9E3779B97F4A7C15 and mixes it with
  ``z ^= z >> 30; z *= 0xBF58476D1CE4E5B9; z ^= z >> 27;
  z *= 0x94D049BB133111EB; z ^= z >> 31`` (all modulo 2**64). The first four
  outputs become the xoshiro256** state words s0..s3.
* Core generator (xoshiro256**): output is ``rotl64(s1 * 5, 7) * 9``; the
  state update is ``t = s1 << 17; s2 ^= s0; s3 ^= s1; s1 ^= s2; s0 ^= s3;
  s2 ^= t; s3 = rotl64(s3, 45)``.
* uniform(): the top 53 bits of one output scaled by 2**-53, so values lie
  in [0, 1).
* normal(): Marsaglia polar method; the second variate of each accepted
  pair is discarded (one normal consumes a fresh pair of uniforms).
* gamma(shape): Marsaglia-Tsang squeeze method for shape >= 1; for
  shape < 1 the boost ``gamma(shape + 1) * uniform() ** (1 / shape)``.
* beta(a, b): the gamma-ratio construction ``x / (x + y)`` with
  ``x ~ gamma(a)``, ``y ~ gamma(b)``; redrawn in the (measure-zero) event
  that both variates underflow to zero.
"""

from __future__ import annotations

import math

_MASK64 = (1 << 64) - 1


def _rotl(x: int, k: int) -> int:
    return ((x << k) | (x >> (64 - k))) & _MASK64


class Xoshiro256:
    """xoshiro256** generator seeded through splitmix64."""

    def __init__(self, seed: int) -> None:
        state = seed & _MASK64
        words = []
        for _ in range(4):
            state = (state + 0x9E3779B97F4A7C15) & _MASK64
            z = state
            z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
            z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
            words.append(z ^ (z >> 31))
        if not any(words):
            words[0] = 1  # the all-zero state is a fixed point of xoshiro
        self._s = words

    def next_u64(self) -> int:
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

    def uniform(self) -> float:
        """Uniform variate in [0, 1)."""
        return (self.next_u64() >> 11) * 2.0**-53

    def normal(self) -> float:
        """Standard normal variate (Marsaglia polar, second variate discarded)."""
        while True:
            u = 2.0 * self.uniform() - 1.0
            v = 2.0 * self.uniform() - 1.0
            s = u * u + v * v
            if 0.0 < s < 1.0:
                return u * math.sqrt(-2.0 * math.log(s) / s)

    def gamma(self, shape: float) -> float:
        """Gamma(shape, 1) variate via Marsaglia-Tsang."""
        if shape <= 0.0:
            raise ValueError(f"gamma shape must be positive, got {shape}")
        if shape < 1.0:
            boost = self.uniform() ** (1.0 / shape)
            return self.gamma(shape + 1.0) * boost
        d = shape - 1.0 / 3.0
        c = 1.0 / math.sqrt(9.0 * d)
        while True:
            x = self.normal()
            t = 1.0 + c * x
            if t <= 0.0:
                continue
            v = t * t * t
            u = self.uniform()
            if u < 1.0 - 0.0331 * x * x * x * x:
                return d * v
            # u == 0 accepts: log tends to -inf, below any finite bound
            if u == 0.0 or math.log(u) < 0.5 * x * x + d * (1.0 - v + math.log(v)):
                return d * v

    def beta(self, a: float, b: float) -> float:
        """Beta(a, b) variate via the gamma-ratio construction."""
        while True:
            x = self.gamma(a)
            y = self.gamma(b)
            if x + y > 0.0:
                return x / (x + y)
