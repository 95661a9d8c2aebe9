"""Experiment drivers: admissible windows, approximation rates, and the
separation demonstration (small lambda lists; full sizes live in the
acceptance suite)."""

import math

import numpy as np
import pytest

from bolab.errors import ConfigError
from bolab.evolution import EvolutionConfig, evolve, galilean_shift
from bolab.experiments import (
    IllposednessConfig,
    admissible_window,
    free_approximation_check,
    galilean_symmetry_check,
    mid_window_time,
    nonuniform_continuity_demo,
    scaling_symmetry_check,
)
from bolab.spectral import PeriodicGrid, from_harmonics


class TestWindows:
    def test_high_regularity_branch(self):
        lo, hi = admissible_window(16, 1.0, 0.5, 0.05)
        assert lo == pytest.approx(16 ** (-0.95))
        assert hi == pytest.approx(16 ** (-0.55))
        t = mid_window_time(16, 1.0, 0.5, 0.05)
        assert lo < t < hi

    def test_low_regularity_branch_needs_half_dispersion(self):
        lo, hi = admissible_window(16, 0.4, 0.5, 0.05)
        assert hi == pytest.approx(16 ** (-0.6))
        with pytest.raises(ConfigError) as err:
            admissible_window(16, 0.4, 0.25, 0.05)
        assert "alpha" in str(err.value)

    def test_s_too_small_for_first_branch_redirects(self):
        # s slightly above 1/2 but inside the margin: window empty
        with pytest.raises(ConfigError) as err:
            admissible_window(16, 0.52, 0.5, 0.05)
        assert "branch" in str(err.value)

    def test_config_validates_lambdas(self):
        with pytest.raises(ConfigError):
            IllposednessConfig(lambda_list=(8, 12))
        with pytest.raises(ConfigError):
            IllposednessConfig(s=-1.0)


class TestApproximation:
    def test_forcing_norm_is_exact_single_mode(self):
        cfg = IllposednessConfig(lambda_list=(8, 16))
        rep = free_approximation_check(cfg)
        for row in rep.rows:
            assert row["forcing_norm_l2"] == pytest.approx(
                0.5 * row["lambda"] ** (1 - 2 * cfg.s) * math.sqrt(math.pi), rel=1e-12)

    def test_defect_vanishes_at_start(self):
        cfg = IllposednessConfig(lambda_list=(8,))
        rep = free_approximation_check(cfg)
        first = min(rep.rows, key=lambda r: r["t"])
        # ||v(t)||/t stays below the forcing norm for small t
        assert first["v_norm_l2"] / first["t"] <= 1.05 * first["forcing_norm_l2"]

    def test_rate_slope_matches_exponent(self):
        cfg = IllposednessConfig(lambda_list=(8, 16, 32))
        rep = free_approximation_check(cfg)
        assert rep.verdict
        assert abs(rep.summary["slope"] - (-1.0)) <= 0.3


class TestSeparationDemo:
    def test_two_lambda_demo_passes(self):
        rep = nonuniform_continuity_demo(IllposednessConfig(lambda_list=(8, 16)))
        assert rep.verdict
        assert rep.summary["initial_distance_slope_vs_lam_t"] == pytest.approx(-1.0, abs=1e-6)
        for row in rep.rows:
            assert row["initial_distance_hs"] == pytest.approx(
                row["initial_distance_analytic"], rel=1e-10)
            assert 0.5 <= row["separation_over_prediction"] <= 2.0
            assert row["crosscheck_l2"] <= 1e-8

    def test_equal_boosts_give_identical_solutions(self):
        g = PeriodicGrid(1.0, 128)
        phi = from_harmonics(g, sin={8: 0.125})
        cfg = EvolutionConfig(grid=g, dt=1e-4, t_final=0.01, snapshot_stride=100)
        tr = evolve(phi, cfg)
        a = galilean_shift(tr, 0.3)
        b = galilean_shift(tr, 0.3)
        assert all(np.array_equal(x.coeffs, y.coeffs)
                   for x, y in zip(a.states, b.states))


class TestSymmetryChecks:
    def test_galilean_zero_boost(self):
        g = PeriodicGrid(1.0, 128)
        u0 = from_harmonics(g, cos={1: 1.0})
        cfg = EvolutionConfig(grid=g, dt=1e-3, t_final=0.1, snapshot_stride=20)
        rep = galilean_symmetry_check(u0, 0.0, cfg)
        assert rep.verdict
        assert rep.summary["max_discrepancy_l2"] <= 1e-12

    def test_galilean_moderate_boost(self):
        g = PeriodicGrid(1.0, 256)
        u0 = from_harmonics(g, cos={1: 1.0})
        cfg = EvolutionConfig(grid=g, dt=1e-3, t_final=0.2, snapshot_stride=50)
        rep = galilean_symmetry_check(u0, 0.3, cfg, tol=1e-7)
        assert rep.verdict

    def test_scaling_identity_scale(self):
        g = PeriodicGrid(1.0, 128)
        u0 = from_harmonics(g, cos={1: 1.0})
        cfg = EvolutionConfig(grid=g, dt=1e-3, t_final=0.1, snapshot_stride=20)
        rep = scaling_symmetry_check(u0, 1, cfg)
        assert rep.verdict
        assert rep.summary["max_discrepancy_l2"] <= 1e-12

    def test_scaling_by_two(self):
        g = PeriodicGrid(1.0, 256)
        u0 = from_harmonics(g, cos={1: 1.0})
        cfg = EvolutionConfig(grid=g, dt=1e-3, t_final=0.2, snapshot_stride=50)
        rep = scaling_symmetry_check(u0, 2, cfg, tol=1e-7)
        assert rep.verdict
