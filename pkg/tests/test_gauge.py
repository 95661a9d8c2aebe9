"""Gauge chain construction, reconstruction identities, and residual series."""

import mpmath
import numpy as np
import pytest

from bolab.errors import InsufficientDataError, MeanValueError
from bolab.evolution import EvolutionConfig, Trajectory, evolve
from bolab.gauge import (
    build_gauge,
    f_equation_residual,
    gauge_lipschitz_ratio,
    high_mode_part,
    reconstruct_high_modes,
    reconstruct_u,
    w_equation_residual,
)
from bolab.rng import SplitMix64, random_real_field
from bolab.spectral import PeriodicGrid, from_harmonics, project

G = PeriodicGrid(1.0, 256)


def smooth_random(seed, band=16, grid=G, amplitude=0.5):
    f = random_real_field(grid, SplitMix64(seed), band, amplitude=amplitude)
    return f - project(f, "zero")


def cos_trajectory(T=0.02, dt=1e-3, stride=2):
    u0 = from_harmonics(G, cos={1: 1.0})
    return evolve(u0, EvolutionConfig(grid=G, dt=dt, t_final=T, snapshot_stride=stride))


class TestBuildGauge:
    def test_zero_field_gives_empty_chain(self):
        gs = build_gauge(G.zeros())
        assert gs.F.l2_norm() == 0.0
        assert gs.W.l2_norm() == 0.0
        assert gs.w.l2_norm() == 0.0

    def test_cosine_chain_matches_quadrature_oracle(self):
        # u = cos x gives F = sin x; the positive modes of exp(-iF/2) were
        # frozen from an independent mpmath quadrature of the coefficients.
        gs = build_gauge(from_harmonics(G, cos={1: 1.0}))
        sinx = from_harmonics(G, sin={1: 1.0})
        assert (gs.F - sinx).l2_norm() < 1e-12
        for n, expected in ((1, -1.522217613661), (2, 0.192290750536),
                            (3, -0.016108390634), (4, 0.001009937067)):
            assert abs(gs.W.coeffs[n] - expected) < 1e-9
        assert np.max(np.abs(gs.W.coeffs[-100:])) == 0.0  # no negative modes

    def test_quadrature_oracle_recomputation(self):
        # recompute one frozen value from scratch to keep the oracle honest
        val = mpmath.quad(
            lambda t: mpmath.exp(-2j * t - 0.5j * mpmath.sin(t)), [0, 2 * mpmath.pi])
        assert abs(complex(val) - 0.192290750536) < 1e-10

    def test_w_identity_residual_small_for_random_smooth(self):
        gs = build_gauge(smooth_random(3))
        assert gs.w_identity_residual <= 1e-10

    def test_nonzero_mean_rejected(self):
        with pytest.raises(MeanValueError):
            build_gauge(from_harmonics(G, cos={1: 1.0}, constant=0.5))

    def test_support_and_derivative_structure(self):
        gs = build_gauge(smooth_random(4))
        xi = G.frequencies
        assert np.max(np.abs(gs.W.coeffs[xi <= 0])) == 0.0
        from bolab.spectral import dx
        assert np.array_equal(gs.w.coeffs, dx(gs.W).coeffs)


class TestReconstruction:
    def test_zero_reconstructs_to_zero(self):
        gs = build_gauge(G.zeros())
        assert reconstruct_u(gs).l2_norm() == 0.0
        assert reconstruct_high_modes(gs).l2_norm() == 0.0

    @pytest.mark.parametrize("seed", [0, 1, 2])
    def test_full_identity_for_random_smooth(self, seed):
        u = smooth_random(seed)
        rec = reconstruct_u(build_gauge(u))
        assert (rec - u).l2_norm() / u.l2_norm() <= 1e-10

    def test_full_identity_for_cosine(self):
        u = from_harmonics(G, cos={1: 1.0})
        rec = reconstruct_u(build_gauge(u))
        assert (rec - u).l2_norm() / u.l2_norm() <= 1e-10

    def test_high_modes_vanish_for_cosine(self):
        u = from_harmonics(G, cos={1: 1.0})
        gs = build_gauge(u)
        assert high_mode_part(u).l2_norm() < 1e-12
        assert reconstruct_high_modes(gs).l2_norm() <= 1e-10

    @pytest.mark.parametrize("seed", [5, 6])
    def test_high_mode_identity_band_eight(self, seed):
        u = smooth_random(seed, band=8)
        gs = build_gauge(u)
        target = high_mode_part(u)
        err = (reconstruct_high_modes(gs) - target).l2_norm() / target.l2_norm()
        assert err <= 1e-10


class TestResidualSeries:
    def test_zero_trajectory_zero_residual(self):
        cfgz = EvolutionConfig(grid=G, dt=1e-3, t_final=0.004)
        tr = evolve(G.zeros(), cfgz)
        assert np.all(f_equation_residual(tr, "exact").values == 0.0)
        assert np.all(w_equation_residual(tr, "exact").values == 0.0)

    def test_exact_mode_residuals_below_tolerance(self):
        tr = cos_trajectory(T=0.05, stride=10)
        assert f_equation_residual(tr, "exact").values.max() <= 1e-6
        assert w_equation_residual(tr, "exact").values.max() <= 1e-6

    def test_fd_mode_second_order_decay(self):
        # halving the snapshot spacing shrinks the fd residual ~4x
        coarse = cos_trajectory(T=0.064, dt=1e-3, stride=16)
        fine = cos_trajectory(T=0.064, dt=1e-3, stride=8)
        for residual in (f_equation_residual, w_equation_residual):
            rc = residual(coarse, "fd").values
            rf = residual(fine, "fd").values
            ratio = rc.max() / rf.max()
            assert 3.0 <= ratio <= 5.0

    def test_fd_needs_three_snapshots(self):
        tr = cos_trajectory(T=0.001, dt=1e-3, stride=1)
        assert len(tr.states) == 2
        with pytest.raises(InsufficientDataError):
            f_equation_residual(tr, "fd")

    def test_mean_zero_precondition_checked(self):
        u0 = from_harmonics(G, cos={1: 1.0}, constant=0.3)
        tr = evolve(u0, EvolutionConfig(grid=G, dt=1e-3, t_final=0.004))
        with pytest.raises(MeanValueError):
            f_equation_residual(tr, "exact")


class TestLipschitz:
    @pytest.mark.parametrize("lam", [1.0, 2.0, 4.0])
    def test_gauge_factor_lipschitz_in_l2(self, lam):
        grid = PeriodicGrid(lam, 128)
        rng = SplitMix64(int(lam))
        worst = 0.0
        for _ in range(10):
            u1 = random_real_field(grid, rng, 10, amplitude=0.7)
            u2 = random_real_field(grid, rng, 10, amplitude=0.7)
            u1 = u1 - project(u1, "zero")
            u2 = u2 - project(u2, "zero")
            worst = max(worst, gauge_lipschitz_ratio(u1, u2))
        assert worst <= 1.0
