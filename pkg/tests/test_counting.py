"""Lattice-pair counting: exact cells, cross-validation, and the sweep bound."""

import pytest

from bolab.counting import (
    brute_force_pair_count,
    max_over_tau,
    max_ratio_sweep,
    modulation_pair_count,
    shell_bounds,
)
from bolab.rng import SplitMix64


class TestShells:
    def test_level_one_shell_is_small_integers(self):
        assert shell_bounds(1) == (0, 1)  # <x> in [1,2) iff |x| <= 1

    def test_level_two_shell(self):
        # <x> in [2,4) iff x^2 in [3, 15] iff |x| in {2, 3}
        assert shell_bounds(2) == (2, 3)

    @pytest.mark.parametrize("m", [1, 2, 4, 8, 16, 32, 64])
    def test_bounds_bracket_the_bracket(self, m):
        a, b = shell_bounds(m)
        if a > 0:
            assert (1 + (a - 1) ** 2) < m * m
        assert m * m <= 1 + a * a
        assert 1 + b * b < 4 * m * m
        assert 1 + (b + 1) ** 2 >= 4 * m * m


class TestPairCount:
    def test_hand_enumerated_cell(self):
        # M1 = M2 = 1, tau = n = 0, n_range = 0: tau1 in {-1, 0, 1}
        assert modulation_pair_count(0, 0, 1, 1, 0) == 3

    def test_swap_symmetry_at_origin(self):
        for m1, m2 in ((1, 4), (2, 8), (4, 16)):
            a = modulation_pair_count(0, 0, m1, m2, 12)
            b = modulation_pair_count(0, 0, m2, m1, 12)
            assert a == b

    def test_matches_brute_force(self):
        rng = SplitMix64(5)
        for _ in range(40):
            m1 = 2 ** rng.choice_index(4)
            m2 = 2 ** rng.choice_index(4)
            tau = int(rng.choice_index(61)) - 30
            n = int(rng.choice_index(9)) - 4
            fast = modulation_pair_count(tau, n, m1, m2, 5)
            slow = brute_force_pair_count(tau, n, m1, m2, 5)
            assert fast == slow

    def test_max_over_tau_matches_enumeration(self):
        for m1, m2, n in ((1, 1, 0), (2, 4, 1), (4, 2, 3)):
            cnt, tau_star = max_over_tau(n, m1, m2, 6)
            brute = max(brute_force_pair_count(t, n, m1, m2, 6) for t in range(-150, 151))
            assert cnt == brute
            assert modulation_pair_count(tau_star, n, m1, m2, 6) == cnt


class TestSweep:
    def test_small_sweep_bound_and_monotone_support(self):
        cells, overall = max_ratio_sweep(8, 16)
        assert overall == max(c.ratio for c in cells)
        for c in cells:
            assert c.max_count <= overall * c.bound + 1e-9
            assert modulation_pair_count(c.argmax_tau, c.argmax_n,
                                         c.m1, c.m2, 16) == c.max_count

    def test_recorded_constant_at_acceptance_size(self):
        # frozen from the exhaustive run: C = 7, attained at M1 = M2 = 1
        cells, overall = max_ratio_sweep(16, 32)
        assert overall == pytest.approx(7.0)
        worst = max(cells, key=lambda c: c.ratio)
        assert (worst.m1, worst.m2) == (1, 1)
