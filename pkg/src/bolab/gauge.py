"""The gauge chain u -> F -> W -> w and machine checks of its identities.

For real mean-zero u on the lam-torus:

    F = the zero-mean primitive of u,
    G = exp(-i*F/2)            (unit modulus),
    W = P_plus(G)              (no modes xi <= 0),
    w = dx(W) = -(i/2) P_plus(G * u).

Verified identities, all on trajectories of the evolution module:

    F_t + H F_xx  = F_x^2/2 - P0(F_x^2)/2
    w_t - i w_xx  = -dx P_plus(W * P_minus(u_x)) + (i/4) P0(F_x^2) w
    u             = 2i exp(iF/2) w + 2i exp(iF/2) dx P_minus(G)
    [xi > 1 part of u] = 2i [.](exp(iF/2) w) + 2i [.]([.]exp(iF/2) * dx P_minus(G))

where [.] projects onto frequencies xi > 1 (one-sided: the identity moves a
projection inside a product against a negative-frequency factor, which is
only valid on the positive side; the |xi| > 1 content of real u follows by
conjugate symmetry).

Time derivatives come in two modes: "exact" substitutes
u_t = -H u_xx + u u_x and pushes it through the chain by the product rule;
"fd" uses centered differences across snapshots, independent of the
derivation under test.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InsufficientDataError, MeanValueError, RealFieldError
from .spectral import (
    MEAN_ZERO_TOL,
    SpectralField,
    antiderivative,
    dx,
    from_spectral,
    gauge_exponential,
    hilbert,
    multiply,
    project,
)


@dataclass(frozen=True)
class GaugeState:
    """Bundle (u, F, W, w) of the transform chain, plus the built-in check
    residual ||w + (i/2) P_plus(exp(-iF/2) u)||_2."""

    u: SpectralField
    F: SpectralField
    W: SpectralField
    w: SpectralField
    w_identity_residual: float


def build_gauge(u, dealias="two_thirds"):
    """Construct the gauge state from real mean-zero u."""
    if not u.is_real():
        raise RealFieldError(
            f"gauge input must be real-valued (defect {u.reality_defect():.3e})")
    F = antiderivative(u)  # raises MeanValueError on nonzero mean
    G = gauge_exponential(F, +1)
    W = project(G, "plus")
    w = dx(W)
    alt = -0.5j * project(multiply(G, u, dealias), "plus").coeffs
    residual = float(
        np.sqrt(np.sum(np.abs(w.coeffs - alt) ** 2) / u.grid.circumference))
    return GaugeState(u=u, F=F, W=W, w=w, w_identity_residual=residual)


def reconstruct_u(state, dealias="two_thirds"):
    """Right side of the full reconstruction identity; compare against state.u."""
    Gp = gauge_exponential(state.F, -1)  # exp(+i*F/2)
    Gm = gauge_exponential(state.F, +1)
    t1 = multiply(Gp, state.w, dealias)
    t2 = multiply(Gp, dx(project(Gm, "minus")), dealias)
    return 2j * (t1 + t2)


def reconstruct_high_modes(state, dealias="two_thirds"):
    """Right side of the high-mode identity (one-sided xi > 1 projection).

    Returns a field supported on xi > 1; compare against the xi > 1 part
    of state.u (obtained as project(project(u, "plus"), "gt", 1)).
    """
    Gp = gauge_exponential(state.F, -1)
    Gm = gauge_exponential(state.F, +1)

    def high(f):
        return project(project(f, "plus"), "gt", 1.0)

    t1 = high(multiply(Gp, state.w, dealias))
    t2 = high(multiply(high(Gp), dx(project(Gm, "minus")), dealias))
    return 2j * (t1 + t2)


def high_mode_part(u):
    """One-sided xi > 1 part of a field (target of reconstruct_high_modes)."""
    return project(project(u, "plus"), "gt", 1.0)


def evolution_rhs(u, dealias="two_thirds"):
    """u_t = -H(u_xx) + u*u_x for the Benjamin-Ono convention used throughout."""
    return multiply(u, dx(u), dealias) - hilbert(dx(dx(u)))


def zero_mode_of_square(u, dealias="two_thirds"):
    """P0(u^2) as a scalar (the mean of u^2)."""
    sq = multiply(u, u, dealias)
    return float((sq.coeffs[0] / u.grid.circumference).real)


@dataclass(frozen=True)
class ResidualSeries:
    equation: str  # "potential" (F) or "wave" (w)
    mode: str      # "exact" or "fd"
    times: np.ndarray
    values: np.ndarray


def _check_traj_mean_zero(traj):
    for state in traj.states:
        m = state.mean()
        if abs(m) > MEAN_ZERO_TOL * (1 + state.l2_norm()):
            raise MeanValueError(complex(m), MEAN_ZERO_TOL)


def _f_residual_field(u, F_t, dealias):
    F = antiderivative(u)
    sq = multiply(u, u, dealias)
    half_sq = 0.5 * (sq - project(sq, "zero"))
    return F_t + hilbert(dx(dx(F))) - half_sq


def _w_residual_field(u, gs, W_t, dealias):
    w_t = dx(W_t)
    w_xx = dx(dx(gs.w))
    source = dx(project(multiply(gs.W, project(dx(u), "minus"), dealias), "plus"))
    p0 = zero_mode_of_square(u, dealias)
    return w_t - 1j * w_xx + source - 0.25j * p0 * gs.w


def _exact_F_t(u, dealias):
    u_t = evolution_rhs(u, dealias)
    u_t = u_t - project(u_t, "zero")  # guard round-off in the mean
    return antiderivative(u_t)


def _exact_W_t(u, gs, F_t, dealias):
    G = gauge_exponential(gs.F, +1)
    return project(-0.5j * multiply(F_t, G, dealias), "plus")


def f_equation_residual(traj, mode="exact", dealias="two_thirds"):
    """L2 residual of the equation satisfied by the primitive F, per snapshot."""
    _check_traj_mean_zero(traj)
    if mode == "exact":
        times, values = [], []
        for t, state in zip(traj.times, traj.states):
            F_t = _exact_F_t(state, dealias)
            values.append(_f_residual_field(state, F_t, dealias).l2_norm())
            times.append(t)
    elif mode == "fd":
        if len(traj.states) < 3:
            raise InsufficientDataError(
                f"finite-difference residual needs >= 3 snapshots, got {len(traj.states)}")
        Fs = [antiderivative(s) for s in traj.states]
        times, values = [], []
        for i in range(1, len(Fs) - 1):
            dt2 = traj.times[i + 1] - traj.times[i - 1]
            F_t = (Fs[i + 1] - Fs[i - 1]) * (1.0 / dt2)
            values.append(_f_residual_field(traj.states[i], F_t, dealias).l2_norm())
            times.append(traj.times[i])
    else:
        raise ValueError(f"unknown residual mode {mode!r}")
    return ResidualSeries("potential", mode, np.array(times), np.array(values))


def w_equation_residual(traj, mode="exact", dealias="two_thirds"):
    """L2 residual of the Schroedinger-type equation satisfied by w, per snapshot."""
    _check_traj_mean_zero(traj)
    if mode == "exact":
        times, values = [], []
        for t, state in zip(traj.times, traj.states):
            gs = build_gauge(state, dealias)
            F_t = _exact_F_t(state, dealias)
            W_t = _exact_W_t(state, gs, F_t, dealias)
            values.append(_w_residual_field(state, gs, W_t, dealias).l2_norm())
            times.append(t)
    elif mode == "fd":
        if len(traj.states) < 3:
            raise InsufficientDataError(
                f"finite-difference residual needs >= 3 snapshots, got {len(traj.states)}")
        gss = [build_gauge(s, dealias) for s in traj.states]
        times, values = [], []
        for i in range(1, len(gss) - 1):
            dt2 = traj.times[i + 1] - traj.times[i - 1]
            W_t = (gss[i + 1].W - gss[i - 1].W) * (1.0 / dt2)
            values.append(
                _w_residual_field(traj.states[i], gss[i], W_t, dealias).l2_norm())
            times.append(traj.times[i])
    else:
        raise ValueError(f"unknown residual mode {mode!r}")
    return ResidualSeries("wave", mode, np.array(times), np.array(values))


def gauge_lipschitz_ratio(u1, u2):
    """sup |exp(-iF1/2) - exp(-iF2/2)| / (lam^(1/2) * ||u1 - u2||_2).

    The mean value theorem plus the primitive's Sobolev bound keep this
    below 1 on any lam >= 1 grid.
    """
    G1 = gauge_exponential(antiderivative(u1), +1)
    G2 = gauge_exponential(antiderivative(u2), +1)
    num = float(np.max(np.abs(from_spectral(G1) - from_spectral(G2))))
    den = np.sqrt(u1.grid.lam) * (u1 - u2).l2_norm()
    return num / den
