"""Discrete space-time norms on smoothly windowed sample blocks.

A WindowedField holds samples u(t_j, x_k) on [0, T) x torus.  Before
transforming, the samples are multiplied by a compactly supported time
cutoff (1 on [T/4, 3T/4], polynomial-smoothstep ramps to 0 at both ends)
and zero-padded to [0, 2T), emulating the compact time support the
continuum norms assume.  The tau lattice spacing is therefore pi/T.

Norm conventions (weights chosen so the (b,s) = (0,0) case reproduces the
space-time L2 norm of the windowed samples exactly):

    X(b,s): ( sum <sigma>^2b <xi>^2s |C|^2 * wt )^(1/2)
    Z(b,s): l2 in xi of  sum_tau <sigma>^b <xi>^s |C| * dtau/(2pi)
    Y(s)  = X(1/2,s) + Z(0,s)

with wt = dtau/(2pi) * 1/(2pi*lam) and sigma the distance to the
dispersive surface: tau + xi|xi| (default) or tau - xi^2 (the phase used by
the quadratic-lattice counting machinery).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ZeroFieldError
from .evolution import dispersion_symbol
from .spectral import SpectralField, from_spectral

PHASES = ("bo", "schrodinger")


def smoothstep(x):
    """C^1 polynomial ramp: 0 for x <= 0, 1 for x >= 1.  The cubic has the
    best main-lobe concentration of the smoothstep family, which dominates
    the window-leakage bounds the norms are checked against."""
    x = np.clip(x, 0.0, 1.0)
    return x * x * (3 - 2 * x)


def time_cutoff(times, t_window):
    """The window psi: 1 on [T/4, 3T/4], smooth ramps on [0,T/4] and [3T/4,T]."""
    q = t_window / 4.0
    up = smoothstep(times / q)
    down = smoothstep((t_window - times) / q)
    return np.minimum(up, down)


@dataclass(frozen=True)
class WindowedField:
    """Space-time sample block with its smooth time cutoff."""

    grid: object
    t_window: float
    samples: np.ndarray  # (n_time, n_modes) complex, u(t_j, x_k)

    def __post_init__(self):
        s = np.asarray(self.samples, dtype=complex)
        if s.ndim != 2 or s.shape[1] != self.grid.n_modes:
            raise ValueError(
                f"samples must be (n_time, {self.grid.n_modes}), got {s.shape}")
        if s.shape[0] < 4 or s.shape[0] % 2 != 0:
            raise ValueError(f"n_time must be even and >= 4, got {s.shape[0]}")
        if self.t_window <= 0:
            raise ValueError(f"t_window must be positive, got {self.t_window}")
        s = s.copy()
        s.setflags(write=False)
        object.__setattr__(self, "samples", s)

    @property
    def n_time(self):
        return self.samples.shape[0]

    @property
    def dt(self):
        return self.t_window / self.n_time

    @property
    def times(self):
        return self.dt * np.arange(self.n_time)

    @property
    def cutoff(self):
        return time_cutoff(self.times, self.t_window)

    def windowed_samples(self):
        return self.cutoff[:, None] * self.samples


def free_wave_window(field, t_window, n_time, alpha=0.5):
    """Samples of the free evolution of the given data over [0, T)."""
    symbol = dispersion_symbol(field.grid, alpha)
    times = (t_window / n_time) * np.arange(n_time)
    phases = np.exp(symbol[None, :] * times[:, None])
    samples = np.fft.ifft(field.coeffs[None, :] * phases, axis=1)
    samples *= field.grid.n_modes / field.grid.circumference
    return WindowedField(field.grid, t_window, samples)


def window_from_callable(grid, t_window, n_time, fn):
    """Samples of fn(t, x) (vectorized over x) on the block."""
    times = (t_window / n_time) * np.arange(n_time)
    samples = np.array([fn(t, grid.points) for t in times], dtype=complex)
    return WindowedField(grid, t_window, samples)


@dataclass(frozen=True)
class SpaceTimeCoeffs:
    """Transform of the windowed, zero-padded block on the (tau, xi) lattice."""

    taus: np.ndarray   # FFT order, spacing pi/T
    xis: np.ndarray
    coeffs: np.ndarray  # (n_tau, n_xi)
    grid: object
    t_window: float

    @property
    def dtau(self):
        return np.pi / self.t_window

    @property
    def weight(self):
        """Squared-norm weight per lattice point (makes X(0,0) the L2 norm)."""
        return self.dtau / (2 * np.pi) / self.grid.circumference


def spacetime_transform(w):
    """Apply the cutoff, zero-pad the window to 2T, and transform both axes."""
    n_t, n_x = w.samples.shape
    g = np.zeros((2 * n_t, n_x), dtype=complex)
    g[:n_t] = w.windowed_samples()
    coeffs = np.fft.fft2(g) * (w.dt * w.grid.circumference / n_x)
    taus = 2 * np.pi * np.fft.fftfreq(2 * n_t, d=w.dt)
    return SpaceTimeCoeffs(taus, w.grid.frequencies, coeffs, w.grid, w.t_window)


def modulation_sigma(st, phase="bo"):
    """sigma(tau, xi) on the lattice: distance to the dispersive surface."""
    if phase == "bo":
        surf = st.xis * np.abs(st.xis)
        return st.taus[:, None] + surf[None, :]
    if phase == "schrodinger":
        return st.taus[:, None] - (st.xis**2)[None, :]
    raise ValueError(f"unknown phase {phase!r}; expected one of {PHASES}")


@dataclass(frozen=True)
class NormSpec:
    flavor: str        # "X", "Z", "Y", or "LpLq"
    b: float = 0.5
    s: float = 0.0
    p: float = 2.0
    q: float = 2.0

    def __post_init__(self):
        if self.flavor not in ("X", "Z", "Y", "LpLq"):
            raise ValueError(f"unknown norm flavor {self.flavor!r}")
        if self.flavor == "Y":
            object.__setattr__(self, "b", 0.5)


def _x_norm(st, b, s, phase):
    sig = modulation_sigma(st, phase)
    wt = (1 + sig**2) ** b * ((1 + st.xis**2) ** s)[None, :]
    return float(np.sqrt(np.sum(wt * np.abs(st.coeffs) ** 2) * st.weight))


def _z_norm(st, b, s, phase):
    sig = modulation_sigma(st, phase)
    wtau = (1 + sig**2) ** (b / 2.0)
    inner = np.sum(wtau * np.abs(st.coeffs), axis=0) * (st.dtau / (2 * np.pi))
    inner *= (1 + st.xis**2) ** (s / 2.0)
    return float(np.sqrt(np.sum(inner**2) / st.grid.circumference))


def bourgain_norm(w, spec, phase="bo"):
    """Evaluate an X/Z/Y norm (or mixed Lebesgue norm) of the windowed block."""
    if spec.flavor == "LpLq":
        return lp_lq_norm(w, spec.p, spec.q)
    st = spacetime_transform(w)
    if spec.flavor == "X":
        return _x_norm(st, spec.b, spec.s, phase)
    if spec.flavor == "Z":
        return _z_norm(st, spec.b, spec.s, phase)
    return _x_norm(st, 0.5, spec.s, phase) + _z_norm(st, 0.0, spec.s, phase)


def lp_lq_norm(w, p, q):
    """Mixed norm L^p_t L^q_x of the raw samples by quadrature (no cutoff)."""
    a = np.abs(w.samples)
    dxw = w.grid.circumference / w.grid.n_modes
    if np.isinf(q):
        inner = a.max(axis=1)
    else:
        inner = (np.sum(a**q, axis=1) * dxw) ** (1.0 / q)
    if np.isinf(p):
        return float(inner.max())
    return float((np.sum(inner**p) * w.dt) ** (1.0 / p))


def _windowed_l4(w):
    a = np.abs(w.windowed_samples())
    dxw = w.grid.circumference / w.grid.n_modes
    return float((np.sum(a**4) * w.dt * dxw) ** 0.25)


def strichartz_ratio(w, phase="bo"):
    """||psi_T u||_L4 / ||u||_X(3/8, 0): the desk-scale quotient of the L4
    embedding of the modulation space."""
    if not np.any(w.samples):
        raise ZeroFieldError("strichartz ratio of the zero field")
    den = bourgain_norm(w, NormSpec("X", b=0.375, s=0.0), phase)
    if den == 0.0:
        raise ZeroFieldError("vanishing X(3/8,0) norm")
    return _windowed_l4(w) / den


# ---------------------------------------------------------------------------
# dyadic decompositions

def dyadic_bump(y):
    """Smoothed indicator of [1/2, 2]: r(y) - r(y/2) with r a polynomial
    smoothstep ramp on [1/2, 1].  Sums to 1 over dyadic dilations for y != 0."""
    def ramp(x):
        return smoothstep((np.asarray(x, dtype=float) - 0.5) / 0.5)

    return ramp(y) - ramp(y / 2.0)


def spatial_block_indices(grid):
    """Dyadic indices k for which eta(2^-k xi) can be nonzero on the grid."""
    xi_min = 1.0 / grid.lam
    xi_max = grid.max_frequency
    k_lo = int(np.floor(np.log2(xi_min)))
    k_hi = int(np.ceil(np.log2(xi_max))) + 1
    return range(k_lo, k_hi + 1)


def modulation_levels(st, phase="bo"):
    """Dyadic M = 2^j shells needed to cover <sigma> on the lattice."""
    smax = float(np.max(np.abs(modulation_sigma(st, phase))))
    j_hi = int(np.floor(np.log2(np.sqrt(1 + smax**2)))) + 1
    return [2**j for j in range(0, j_hi + 1)]


@dataclass(frozen=True)
class ModulationBlock:
    """Piece of a windowed block with <sigma> in [level, 2*level), as physical
    samples on the zero-padded window [0, 2T)."""

    grid: object
    t_window: float
    level: int
    samples: np.ndarray  # (2*n_time, n_modes)

    def l2(self):
        dxw = self.grid.circumference / self.grid.n_modes
        dtw = self.t_window / (self.samples.shape[0] // 2)
        return float(np.sqrt(np.sum(np.abs(self.samples) ** 2) * dtw * dxw))


def littlewood_paley(obj, k, phase="bo"):
    """Dyadic piece: spatial block for a SpectralField (smooth bump at scale
    2^k), modulation block with <sigma> in [2^k, 2^(k+1)) for a WindowedField."""
    if isinstance(obj, SpectralField):
        mult = dyadic_bump(np.abs(obj.grid.frequencies) / 2.0**k)
        return obj.with_coeffs(obj.coeffs * mult)
    if isinstance(obj, WindowedField):
        level = 2**k if isinstance(k, (int, np.integer)) else k
        return modulation_block(obj, level, phase)
    raise TypeError(f"littlewood_paley expects a field or windowed field, got {type(obj)}")


def modulation_block(w, level, phase="bo"):
    """Sharp shell <sigma> in [level, 2*level) of the windowed transform."""
    st = spacetime_transform(w)
    mag = np.sqrt(1 + modulation_sigma(st, phase) ** 2)
    mask = (mag >= level) & (mag < 2 * level)
    kept = np.where(mask, st.coeffs, 0.0)
    n_tau, n_x = kept.shape
    samples = np.fft.ifft2(kept) / (w.dt * w.grid.circumference / n_x)
    return ModulationBlock(w.grid, w.t_window, int(level), samples)


def bilinear_block_norm(block1, block2):
    """||v1 * v2||_L2 / (||v1||_L2 ||v2||_L2) for two modulation blocks."""
    n1, n2 = block1.l2(), block2.l2()
    if n1 == 0.0 or n2 == 0.0:
        raise ZeroFieldError("bilinear block norm of a zero block")
    prod = block1.samples * block2.samples
    dxw = block1.grid.circumference / block1.grid.n_modes
    dtw = block1.t_window / (block1.samples.shape[0] // 2)
    num = float(np.sqrt(np.sum(np.abs(prod) ** 2) * dtw * dxw))
    return num / (n1 * n2)


def bilinear_block_bound(m1, m2):
    """(M1 ^ M2)^(1/2) (M1 v M2)^(1/4), the block-product reference bound."""
    return min(m1, m2) ** 0.5 * max(m1, m2) ** 0.25
