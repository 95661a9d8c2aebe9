"""Seeded PRNG for the random surveys.

SplitMix64 (Steele, Lea & Flood 2014): 64-bit state, output mixed through
two xor-shift-multiply rounds with the constants below.  Chosen over a
library generator so that seeded survey values are reproducible bit-for-bit
from the documented algorithm alone.  Normals come from Box-Muller.
"""

from __future__ import annotations



import numpy as np

_MASK = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


class SplitMix64:
    def __init__(self, seed):
        self._state = int(seed) & _MASK

    def next_u64(self):
        self._state = (self._state + _GAMMA) & _MASK
        z = self._state
        z = ((z ^ (z >> 30)) * _MIX1) & _MASK
        z = ((z ^ (z >> 27)) * _MIX2) & _MASK
        return z ^ (z >> 31)

    def _bulk_u64(self, n):
        """n outputs at once; the stream is a pure function of the counter,
        so the block matches n successive next_u64 calls exactly."""
        with np.errstate(over="ignore"):
            steps = (np.arange(1, n + 1, dtype=np.uint64)
                     * np.uint64(_GAMMA) + np.uint64(self._state))
            self._state = int(steps[-1]) if n else self._state
            z = steps
            z = (z ^ (z >> np.uint64(30))) * np.uint64(_MIX1)
            z = (z ^ (z >> np.uint64(27))) * np.uint64(_MIX2)
            return z ^ (z >> np.uint64(31))

    def uniform(self):
        """Uniform in [0, 1) with 53-bit resolution."""
        return (self.next_u64() >> 11) * 2.0**-53

    def uniforms(self, n):
        return (self._bulk_u64(n) >> np.uint64(11)) * 2.0**-53

    def normal(self):
        return float(self.normals(1)[0])

    def normals(self, n):
        # Box-Muller, cosine branch only: two uniforms per value.
        u = self.uniforms(2 * n)
        u1, u2 = u[0::2], u[1::2]
        u1[u1 == 0.0] = 2.0**-53  # guard the log, probability ~2^-53 per draw
        return np.sqrt(-2.0 * np.log(u1)) * np.cos(2.0 * np.pi * u2)

    def complex_normals(self, n):
        return self.normals(n) + 1j * self.normals(n)

    def choice_index(self, n):
        """Uniform integer in [0, n) (rejection-free modulo; bias < 2^-50 for small n)."""
        return self.next_u64() % n


def random_real_field(grid, rng, max_mode, amplitude=1.0, mean_zero=True):
    """Band-limited real field with i.i.d. normal harmonic amplitudes."""
    from .spectral import from_harmonics

    max_mode = min(int(max_mode), grid.n_modes // 2 - 1)
    cos = {k: amplitude * rng.normal() for k in range(1, max_mode + 1)}
    sin = {k: amplitude * rng.normal() for k in range(1, max_mode + 1)}
    constant = 0.0 if mean_zero else amplitude * rng.normal()
    return from_harmonics(grid, cos=cos, sin=sin, constant=constant)
