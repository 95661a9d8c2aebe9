"""Fourier-side representation of (2*pi*lambda)-periodic functions.

Conventions (used everywhere in the package):

* A grid with period scale ``lam`` covers the torus [0, 2*pi*lam) with
  ``n_modes`` collocation points; the frequency lattice is xi = k/lam for
  integer k in [-n_modes/2, n_modes/2), stored in FFT order.
* Coefficients follow the integral transform

      uhat(xi) = int_0^{2*pi*lam} exp(-i*xi*x) u(x) dx,

  inverted by u(x) = (1/(2*pi*lam)) * sum_xi uhat(xi) exp(i*xi*x), so that
  uhat(0) = 2*pi for u == 1 on the unit torus and Parseval reads

      int |u|^2 dx = (1/(2*pi*lam)) * sum_xi |uhat(xi)|^2.

* The Nyquist mode k = -n_modes/2 is zeroed by the sign-ambiguous
  multipliers (d/dx, Hilbert, |xi|^a, antiderivative).  Dealiased products
  and evolved states never populate it, so identities among these operators
  are exact on that operational class.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import GridMismatchError, MeanValueError, RealFieldError, SizeMismatchError

MEAN_ZERO_TOL = 1e-10
REALITY_TOL = 1e-9


@dataclass(frozen=True)
class PeriodicGrid:
    """Collocation grid on the torus of circumference 2*pi*lam.

    lam : period scale, >= 1
    n_modes : number of collocation points, even, >= 8
    """

    lam: float = 1.0
    n_modes: int = 256

    def __post_init__(self):
        if self.lam < 1:
            raise ValueError(f"period scale must satisfy lam >= 1, got {self.lam}")
        if self.n_modes < 8 or self.n_modes % 2 != 0:
            raise ValueError(f"n_modes must be even and >= 8, got {self.n_modes}")
        k = np.fft.fftfreq(self.n_modes, d=1.0 / self.n_modes)  # integer lattice index
        freqs = k / self.lam
        freqs.setflags(write=False)
        x = (2 * np.pi * self.lam / self.n_modes) * np.arange(self.n_modes)
        x.setflags(write=False)
        object.__setattr__(self, "_k", k)
        object.__setattr__(self, "frequencies", freqs)
        object.__setattr__(self, "points", x)

    @property
    def circumference(self):
        return 2 * np.pi * self.lam

    @property
    def nyquist_index(self):
        return self.n_modes // 2  # position of k = -n_modes/2 in FFT order

    @property
    def max_frequency(self):
        return self.n_modes / (2 * self.lam)

    @property
    def dealias_cutoff(self):
        """2/3-rule cutoff: products zero every |xi| above this."""
        return self.n_modes / (3 * self.lam)

    def zeros(self):
        return SpectralField(self, np.zeros(self.n_modes, dtype=complex))


@dataclass(frozen=True)
class SpectralField:
    """One function on the torus, stored as Fourier coefficients on its grid."""

    grid: PeriodicGrid
    coeffs: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=complex)
        if c.shape != (self.grid.n_modes,):
            raise SizeMismatchError(
                f"expected {self.grid.n_modes} coefficients, got shape {c.shape}")
        c = c.copy()
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    def with_coeffs(self, coeffs):
        return SpectralField(self.grid, coeffs)

    def reality_defect(self):
        """Max deviation from the conjugate symmetry uhat(-xi) = conj(uhat(xi))."""
        c = self.coeffs
        sym = np.conj(c[(-np.arange(self.grid.n_modes)) % self.grid.n_modes])
        return float(np.max(np.abs(c - sym)))

    def is_real(self, tol=REALITY_TOL):
        scale = 1.0 + float(np.max(np.abs(self.coeffs)))
        return self.reality_defect() <= tol * scale

    def mean(self):
        return self.coeffs[0] / self.grid.circumference

    def l2_norm(self):
        """L^2 norm on the torus, int |u|^2 dx, via Parseval."""
        return float(np.sqrt(np.sum(np.abs(self.coeffs) ** 2) / self.grid.circumference))

    def __add__(self, other):
        _check_same_grid(self, other)
        return SpectralField(self.grid, self.coeffs + other.coeffs)

    def __sub__(self, other):
        _check_same_grid(self, other)
        return SpectralField(self.grid, self.coeffs - other.coeffs)

    def __mul__(self, scalar):
        return SpectralField(self.grid, self.coeffs * scalar)

    __rmul__ = __mul__


def _check_same_grid(f, g):
    if f.grid != g.grid:
        raise GridMismatchError(
            f"fields live on different grids: {f.grid} vs {g.grid}")


def to_spectral(grid, samples):
    """Transform physical samples on the grid's collocation points."""
    s = np.asarray(samples)
    if s.shape != (grid.n_modes,):
        raise SizeMismatchError(
            f"expected {grid.n_modes} samples, got shape {s.shape}")
    return SpectralField(grid, np.fft.fft(s) * (grid.circumference / grid.n_modes))


def from_spectral(field):
    """Physical samples at the collocation points (complex in general)."""
    return np.fft.ifft(field.coeffs) * (field.grid.n_modes / field.grid.circumference)


def physical_real(field, tol=REALITY_TOL):
    """Physical samples of a real-valued field; raises if it is not real."""
    if not field.is_real(tol):
        raise RealFieldError(
            f"field is not real-valued (conjugate-symmetry defect {field.reality_defect():.3e})")
    return from_spectral(field).real


def from_harmonics(grid, cos=(), sin=(), constant=0.0):
    """Field built from (k, amplitude) pairs: sum a*cos(k*x/lam) + b*sin(k*x/lam).

    The wavenumber k is the integer lattice index, i.e. frequency k/lam.
    """
    x = grid.points / grid.lam
    u = np.full(grid.n_modes, float(constant))
    for k, amp in dict(cos).items():
        u = u + amp * np.cos(k * x)
    for k, amp in dict(sin).items():
        u = u + amp * np.sin(k * x)
    return to_spectral(grid, u)


def project(field, which, a=None):
    """Frequency projection.

    which = "plus"  : keep xi >= 1/lam
            "minus" : keep xi <= -1/lam
            "zero"  : keep the mean mode only
            "leq"   : keep |xi| <= a (includes 0); requires a >= 0
            "gt"    : keep |xi| > a; requires a >= 0
    """
    xi = field.grid.frequencies
    if which == "plus":
        mask = xi > 0
    elif which == "minus":
        mask = xi < 0
    elif which == "zero":
        mask = xi == 0
    elif which in ("leq", "gt"):
        if a is None or a < 0:
            raise ValueError(f"projection {which!r} needs a threshold a >= 0, got {a}")
        mask = (np.abs(xi) <= a) if which == "leq" else (np.abs(xi) > a)
    else:
        raise ValueError(f"unknown projection {which!r}")
    out = np.zeros_like(field.coeffs)
    out[mask] = field.coeffs[mask]
    return field.with_coeffs(out)


def _odd_multiplier_mask(grid):
    """False at the Nyquist slot, True elsewhere."""
    mask = np.ones(grid.n_modes, dtype=bool)
    mask[grid.nyquist_index] = False
    return mask


def hilbert(field):
    """Hilbert transform: multiplier -i*sgn(xi), zero on the mean and Nyquist."""
    xi = field.grid.frequencies
    mult = -1j * np.sign(xi)
    mult[~_odd_multiplier_mask(field.grid)] = 0
    return field.with_coeffs(field.coeffs * mult)


def dx(field):
    """Spatial derivative: multiplier i*xi (Nyquist zeroed)."""
    xi = field.grid.frequencies.copy()
    xi[field.grid.nyquist_index] = 0.0
    return field.with_coeffs(1j * xi * field.coeffs)


def frac_deriv(field, kind, order=None):
    """Coefficient-wise multiplier derivatives.

    kind = "D"  : homogeneous |xi|^order (Nyquist zeroed for order > 0)
           "J"  : inhomogeneous <xi>^order = (1+xi^2)^(order/2)
           "dx" : i*xi
    """
    if kind == "dx":
        return dx(field)
    if order is None:
        raise ValueError(f"frac_deriv kind {kind!r} needs an order")
    xi = field.grid.frequencies
    if kind == "D":
        if order == 0:
            return field.with_coeffs(field.coeffs.copy())
        mult = np.abs(xi) ** order
        mult[field.grid.nyquist_index] = 0.0
        return field.with_coeffs(field.coeffs * mult)
    if kind == "J":
        return field.with_coeffs(field.coeffs * (1.0 + xi**2) ** (order / 2.0))
    raise ValueError(f"unknown frac_deriv kind {kind!r}")


def antiderivative(field, tol=MEAN_ZERO_TOL):
    """The unique zero-mean primitive of a mean-zero field."""
    mean = field.mean()
    if abs(mean) > tol:
        raise MeanValueError(complex(mean), tol)
    xi = field.grid.frequencies
    out = np.zeros_like(field.coeffs)
    nz = (xi != 0) & _odd_multiplier_mask(field.grid)
    out[nz] = field.coeffs[nz] / (1j * xi[nz])
    return field.with_coeffs(out)


def dealias_mask(grid, rule="two_thirds"):
    if rule is None or rule == "none":
        return np.ones(grid.n_modes, dtype=bool)
    if rule == "two_thirds":
        return np.abs(grid.frequencies) <= grid.dealias_cutoff
    raise ValueError(f"unknown dealias rule {rule!r}")


def multiply(f, g, dealias="two_thirds"):
    """Pointwise physical product, truncated per the dealias rule."""
    _check_same_grid(f, g)
    prod = from_spectral(f) * from_spectral(g)
    out = np.fft.fft(prod) * (f.grid.circumference / f.grid.n_modes)
    out[~dealias_mask(f.grid, dealias)] = 0.0
    return f.with_coeffs(out)


def gauge_exponential(field, sign=+1, tol=REALITY_TOL):
    """Unit-modulus gauge factor exp(sign * (-i) * F/2) for real F.

    sign=+1 gives exp(-i*F/2); sign=-1 gives exp(+i*F/2).
    """
    if sign not in (+1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign}")
    F = physical_real(field, tol)
    return to_spectral(field.grid, np.exp(sign * (-0.5j) * F))
