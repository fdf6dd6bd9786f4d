"""Representation formulas against the dynamic-programming engine."""

import numpy as np
import pytest

from pointwalk.errors import CapExceeded, GridTooSmall, WrongParity
from pointwalk.exact import evolve_perturbed
from pointwalk.representation import (
    PI_SYMMETRIC_CAP,
    characteristic_decay_rate,
    convolution_identity_check,
    fourier_inversion_check,
    pi_antisymmetric,
    pi_symmetric,
    shift_field,
)

from conftest import make_walk


class TestAntisymmetric:
    @pytest.mark.parametrize("n", [1, 2, 5, 16, 33])
    def test_matches_engine_lazy1d(self, lazy1d, n):
        rep = pi_antisymmetric(lazy1d, n)
        assert rep.max_abs_diff(evolve_perturbed(lazy1d, n)) <= 1e-13

    @pytest.mark.parametrize("n", [1, 3, 8, 14])
    def test_matches_engine_nn2d(self, nn2d, n):
        rep = pi_antisymmetric(nn2d, n)
        assert rep.max_abs_diff(evolve_perturbed(nn2d, n)) <= 1e-13

    def test_strong_bias_still_exact(self):
        walk = make_walk(1, {(0,): .5, (1,): .25, (-1,): .25},
                         anti={(1,): 0.24, (-1,): -0.24})
        rep = pi_antisymmetric(walk, 12)
        assert rep.max_abs_diff(evolve_perturbed(walk, 12)) <= 1e-13

    def test_rejects_symmetric_perturbation(self, sym1d):
        with pytest.raises(WrongParity):
            pi_antisymmetric(sym1d, 4)


class TestSymmetric:
    @pytest.mark.parametrize("n", [1, 2, 3, 6, 10, 16])
    def test_matches_engine(self, sym1d, n):
        rep = pi_symmetric(sym1d, n)
        assert rep.max_abs_diff(evolve_perturbed(sym1d, n)) <= 1e-13

    def test_small_epsilon(self):
        walk = make_walk(1, {(0,): .5, (1,): .25, (-1,): .25},
                         sym={(0,): .25, (1,): -.125, (-1,): -.125},
                         epsilon=0.3)
        rep = pi_symmetric(walk, 8)
        assert rep.max_abs_diff(evolve_perturbed(walk, 8)) <= 1e-13

    def test_wider_symmetric_support(self):
        walk = make_walk(1, {(0,): .4, (1,): .2, (-1,): .2, (2,): .1, (-2,): .1},
                         sym={(0,): .2, (2,): -.1, (-2,): -.1},
                         epsilon=0.5)
        rep = pi_symmetric(walk, 6)
        assert rep.max_abs_diff(evolve_perturbed(walk, 6)) <= 1e-13

    def test_rejects_antisymmetric_perturbation(self, lazy1d):
        with pytest.raises(WrongParity):
            pi_symmetric(lazy1d, 4)

    def test_cost_cap(self, sym1d):
        with pytest.raises(CapExceeded):
            pi_symmetric(sym1d, PI_SYMMETRIC_CAP + 1)


class TestConvolutionIdentity:
    @pytest.mark.parametrize("n", [1, 2, 8, 20])
    def test_lazy1d(self, lazy1d, n):
        assert convolution_identity_check(lazy1d, n) <= 1e-14

    @pytest.mark.parametrize("n", [1, 4, 10])
    def test_nn2d(self, nn2d, n):
        assert convolution_identity_check(nn2d, n) <= 1e-14

    def test_requires_antisymmetric_part(self, sym1d):
        with pytest.raises(WrongParity):
            convolution_identity_check(sym1d, 4)


class TestFourier:
    def test_inversion_matches_engine_1d(self, lazy1d):
        assert fourier_inversion_check(lazy1d, 24, 128) <= 1e-12

    def test_inversion_matches_engine_2d(self, nn2d):
        assert fourier_inversion_check(nn2d, 10, 64) <= 1e-12

    def test_grid_must_resolve_reachable_box(self, lazy1d):
        with pytest.raises(GridTooSmall):
            fourier_inversion_check(lazy1d, 40, 64)

    def test_decay_rate_lazy1d(self, lazy1d):
        # 1 - P(lambda) ~ (1/4) lambda^2 near zero and the ratio only grows
        gamma = characteristic_decay_rate(lazy1d)
        assert gamma == pytest.approx(0.25, abs=0.01)

    def test_periodic_kernel_has_no_positive_rate(self):
        # |P(pi)| = 1 for the simple walk, so the fitted rate collapses to 0
        from conftest import srw_1d
        assert characteristic_decay_rate(srw_1d()) <= 1e-6


class TestShiftField:
    def test_shift_moves_mass(self):
        values = np.zeros((5, 5))
        values[2, 2] = 1.0
        moved = shift_field(values, (1, -2))
        assert moved[3, 0] == 1.0
        assert moved.sum() == 1.0

    def test_shift_drops_mass_leaving_the_box(self):
        values = np.ones((3,))
        assert shift_field(values, (2,)).sum() == pytest.approx(1.0)
