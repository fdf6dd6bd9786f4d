"""Dynamic-programming engine against explicit path enumeration.

Every distribution the engine produces (free, perturbed, origin-avoiding)
is compared with the brute-force oracle from conftest at small n, plus a
handful of values small enough to carry by hand.
"""

import numpy as np
import pytest

from pointwalk.errors import BoxTooSmall, CapExceeded
from pointwalk.exact import (
    RHO_DIRECT_CAP,
    evolve_free,
    evolve_perturbed,
    evolve_taboo,
    first_return_sequence,
    return_sequence,
    rho,
    rho_direct,
)

from conftest import brute_force, srw_1d


def field_matches(field, expected, tol=1e-13):
    """Compare a MassField to a {site: prob} dict, including zeros."""
    worst = 0.0
    for site in field.sites():
        worst = max(worst, abs(field.value_at(site) - expected.get(site, 0.0)))
    # also catch oracle mass the field's box somehow missed
    for site, p in expected.items():
        worst = max(worst, abs(field.value_at(site) - p))
    assert worst <= tol, f"max deviation {worst:.3e}"


class TestAgainstEnumeration:
    @pytest.mark.parametrize("n", [1, 2, 3, 5, 8])
    def test_free_lazy1d(self, lazy1d, n):
        field_matches(evolve_free(lazy1d, n), brute_force(lazy1d, n, "free"))

    @pytest.mark.parametrize("n", [1, 2, 3, 5, 8])
    def test_perturbed_lazy1d(self, lazy1d, n):
        field_matches(evolve_perturbed(lazy1d, n),
                      brute_force(lazy1d, n, "perturbed"))

    @pytest.mark.parametrize("n", [1, 2, 3, 5, 8])
    def test_perturbed_symmetric_kernel(self, sym1d, n):
        field_matches(evolve_perturbed(sym1d, n),
                      brute_force(sym1d, n, "perturbed"))

    @pytest.mark.parametrize("n", [1, 2, 3, 5, 8])
    def test_taboo_lazy1d(self, lazy1d, n):
        field_matches(evolve_taboo(lazy1d, n),
                      brute_force(lazy1d, n, "taboo"))

    @pytest.mark.parametrize("n", [1, 2, 4, 6])
    def test_free_and_perturbed_nn2d(self, nn2d, n):
        field_matches(evolve_free(nn2d, n), brute_force(nn2d, n, "free"))
        field_matches(evolve_perturbed(nn2d, n),
                      brute_force(nn2d, n, "perturbed"))

    @pytest.mark.parametrize("n", [2, 6, 10])
    def test_simple_walk(self, n):
        walk = srw_1d()
        field_matches(evolve_free(walk, n), brute_force(walk, n, "free"))
        field_matches(evolve_taboo(walk, n), brute_force(walk, n, "taboo"))

    def test_taboo_off_origin_start(self, lazy1d):
        got = evolve_taboo(lazy1d, 5, start=(2,))
        field_matches(got, brute_force(lazy1d, 5, "taboo", start=(2,)))


class TestHandValues:
    """Small probabilities carried by hand."""

    def test_lazy1d_two_step_return(self, lazy1d):
        # 0.5^2 + 2 * 0.25^2
        assert evolve_free(lazy1d, 2).origin_value == pytest.approx(0.375)

    def test_lazy1d_one_step_perturbed_row(self, lazy1d):
        field = evolve_perturbed(lazy1d, 1)
        assert field.value_at((-1,)) == pytest.approx(0.15)
        assert field.value_at((0,)) == pytest.approx(0.50)
        assert field.value_at((1,)) == pytest.approx(0.35)

    def test_srw_taboo_and_first_return(self):
        walk = srw_1d()
        # only path 0 -> 1 -> 2
        assert evolve_taboo(walk, 2).value_at((2,)) == pytest.approx(0.25)
        f = first_return_sequence(walk, 4)
        assert f[2] == pytest.approx(0.5)    # 0 -> ±1 -> 0
        assert f[4] == pytest.approx(0.125)  # C(2,1)/2 / 2^4 per excursion count
        assert f[1] == f[3] == 0.0

    def test_srw_revisit_mass_at_origin(self):
        walk = srw_1d()
        # at the origin the revisited mass is the full return probability
        assert rho(walk, 4).origin_value == pytest.approx(6 / 16)


class TestInvariants:
    @pytest.mark.parametrize("n", [1, 4, 9])
    def test_mass_conservation(self, lazy1d, n):
        assert evolve_free(lazy1d, n).total() == pytest.approx(1.0, abs=1e-14)
        assert evolve_perturbed(lazy1d, n).total() == pytest.approx(1.0, abs=1e-14)

    def test_taboo_mass_accounting(self, lazy1d):
        """Surviving taboo mass is 1 minus everything absorbed earlier."""
        n = 12
        fields, arrivals = evolve_taboo(lazy1d, n, history=True)
        absorbed = float(arrivals[1:n].sum())
        assert fields[n].total() == pytest.approx(1.0 - absorbed, abs=1e-13)

    def test_free_field_is_even(self, lazy1d):
        field = evolve_free(lazy1d, 9)
        assert field.max_abs_diff(field.reflected()) <= 1e-16

    def test_renewal_identity(self, lazy1d):
        """p_n = sum_k f_k p_{n-k} for n >= 1."""
        horizon = 14
        p = return_sequence(lazy1d, horizon).values
        f = first_return_sequence(lazy1d, horizon)
        for n in range(1, horizon + 1):
            conv = sum(f[k] * p[n - k] for k in range(1, n + 1))
            assert conv == pytest.approx(p[n], abs=1e-14)

    def test_return_sequence_perturbed_channel(self, sym1d):
        seq = return_sequence(sym1d, 8, perturbed=True)
        direct = [evolve_perturbed(sym1d, n).origin_value for n in range(9)]
        assert np.allclose(seq.perturbed, direct, atol=1e-15)
        # epsilon-weighted symmetric part shifts the origin mass upward here
        assert seq.perturbed[2] == pytest.approx(5 / 8)

    def test_prop2_identity_antisymmetric_only(self, lazy1d, nn2d):
        for walk in (lazy1d, nn2d):
            for n in (3, 7, 12):
                assert (evolve_perturbed(walk, n).origin_value
                        == pytest.approx(evolve_free(walk, n).origin_value,
                                         abs=1e-14))


class TestRho:
    @pytest.mark.parametrize("n", [2, 5, 9, 12])
    def test_two_evaluations_agree_off_origin(self, lazy1d, n):
        a = rho(lazy1d, n)
        b = rho_direct(lazy1d, n)
        worst = max(
            abs(a.value_at(s) - b.value_at(s))
            for s in a.sites() if any(c != 0 for c in s)
        )
        assert worst <= 1e-14

    def test_rho_complements_taboo(self, lazy1d):
        n = 8
        free = evolve_free(lazy1d, n)
        taboo = evolve_taboo(lazy1d, n)
        r = rho(lazy1d, n)
        for site in free.sites():
            if all(c == 0 for c in site):
                continue
            assert r.value_at(site) + taboo.value_at(site) == pytest.approx(
                free.value_at(site), abs=1e-14)

    def test_direct_evaluation_cap(self, lazy1d):
        with pytest.raises(CapExceeded):
            rho_direct(lazy1d, RHO_DIRECT_CAP + 1)


class TestBoxes:
    def test_small_box_rejected_when_strict(self, lazy1d):
        with pytest.raises(BoxTooSmall):
            evolve_free(lazy1d, 10, radius=3)

    def test_small_box_truncates_otherwise(self, lazy1d):
        field = evolve_free(lazy1d, 10, radius=3, strict=False)
        assert field.total() < 1.0
        exact = evolve_free(lazy1d, 10)
        # interior agrees where leaked mass cannot reach back
        assert field.value_at((0,)) <= exact.value_at((0,))

    def test_default_box_is_exact(self, nn2d):
        field = evolve_free(nn2d, 6)
        assert field.radius == 6
        assert field.total() == pytest.approx(1.0, abs=1e-15)
