import math

import numpy as np
import pytest

from conftest import growth_pair, smooth_random
from morphogrow.elasticity import elastic_response, reconstruct
from morphogrow.energy import make_log_quadratic
from morphogrow.errors import GrowthCollapse, InconsistentGeometry, InvalidCoefficient
from morphogrow.numerics import ScalarField, make_uniform_grid, observed_order
from morphogrow.nutrient import (
    eulerian_coefficients,
    lagrangian_coefficients,
    solve_nutrient_eulerian,
    solve_nutrient_lagrangian,
    solve_sturm_liouville,
)


def const(grid, v):
    return ScalarField.constant(grid, v)


def sinh_profile(kappa, L=1.0):
    # -u'' + kappa^2 u = 0, u(0) = 1, u(L) = 0
    return lambda x: np.sinh(kappa * (L - x)) / np.sinh(kappa * L)


class TestCoefficients:
    def test_unit(self):
        g = make_uniform_grid(1.0, 8)
        a, c = lagrangian_coefficients(const(g, 1), const(g, 1), const(g, 1))
        np.testing.assert_array_equal(a.values, 1.0)
        np.testing.assert_array_equal(c.values, 1.0)

    def test_doubled_growth(self):
        g = make_uniform_grid(1.0, 8)
        a, c = lagrangian_coefficients(const(g, 2), const(g, 1), const(g, 1))
        np.testing.assert_array_equal(a.values, 0.5)
        np.testing.assert_array_equal(c.values, 2.0)

    def test_affine_diffusion(self):
        g = make_uniform_grid(1.0, 8)
        D0 = ScalarField.from_function(g, lambda x: 1 + x)
        a, _ = lagrangian_coefficients(const(g, 1), D0, const(g, 1))
        np.testing.assert_allclose(a.values, 1 + g.nodes)

    def test_collapse(self):
        g = make_uniform_grid(1.0, 8)
        with pytest.raises(GrowthCollapse):
            lagrangian_coefficients(const(g, 0.0), const(g, 1), const(g, 1))


class TestSturmLiouville:
    def test_zero_data(self):
        g = make_uniform_grid(1.0, 16)
        a = ScalarField.from_function(g, lambda x: 1 + x * x)
        u = solve_sturm_liouville(a, const(g, 3.0), 0.0, 0.0)
        np.testing.assert_array_equal(u.values, 0.0)

    def test_sinh(self):
        g = make_uniform_grid(1.0, 64)
        u = solve_sturm_liouville(const(g, 1), const(g, 1), 1.0, 0.0)
        assert u.values[32] == pytest.approx(math.sinh(0.5) / math.sinh(1.0), abs=2e-4)

    def test_harmonic_exact(self):
        g = make_uniform_grid(1.0, 16)
        u = solve_sturm_liouville(const(g, 1), const(g, 0), 0.0, 1.0)
        np.testing.assert_allclose(u.values, g.nodes, atol=1e-14)

    def test_rejects_bad_coefficients(self):
        g = make_uniform_grid(1.0, 8)
        with pytest.raises(InvalidCoefficient):
            solve_sturm_liouville(const(g, 0.0), const(g, 1), 1.0, 0.0)
        with pytest.raises(InvalidCoefficient):
            solve_sturm_liouville(const(g, 1.0), const(g, -1), 1.0, 0.0)

    def test_second_order(self):
        exact = sinh_profile(1.0)
        Ms = [64, 128, 256, 512]
        errs = []
        for M in Ms:
            g = make_uniform_grid(1.0, M)
            u = solve_sturm_liouville(const(g, 1), const(g, 1), 1.0, 0.0)
            errs.append(np.abs(u.values - exact(g.nodes)).max())
        assert 1.9 <= observed_order(errs, [1 / M for M in Ms]) <= 2.1


class TestLagrangian:
    def test_zero_boundary(self):
        g = make_uniform_grid(1.0, 16)
        sol = solve_nutrient_lagrangian(const(g, 1.3), const(g, 1), const(g, 2), 0.0, 0.0)
        np.testing.assert_array_equal(sol.N.values, 0.0)
        assert sol.n is None

    def test_unit_growth(self):
        g = make_uniform_grid(1.0, 64)
        sol = solve_nutrient_lagrangian(const(g, 1), const(g, 1), const(g, 1), 1.0, 0.0)
        assert sol.N.values[32] == pytest.approx(0.443409, abs=2e-4)

    def test_doubled_growth(self):
        g = make_uniform_grid(1.0, 64)
        sol = solve_nutrient_lagrangian(const(g, 2), const(g, 1), const(g, 1), 1.0, 0.0)
        assert sol.N.values[32] == pytest.approx(math.sinh(1) / math.sinh(2), abs=5e-4)

    def test_max_principle_and_boundary(self, rng):
        g = make_uniform_grid(1.0, 64)
        for _ in range(30):
            G, D0, B0 = (ScalarField.from_function(g, smooth_random(rng, 0.5, 2.0)) for _ in range(3))
            nL, nR = rng.uniform(0, 1, 2)
            N = solve_nutrient_lagrangian(G, D0, B0, nL, nR).N.values
            assert N[0] == nL and N[-1] == nR
            assert N.min() >= -1e-12
            assert N.max() <= max(nL, nR) + 1e-12


class TestEulerian:
    def test_identity_coefficients(self):
        g = make_uniform_grid(1.0, 16)
        sol = reconstruct(make_log_quadratic(const(g, 1)), const(g, 1), 0.0)
        co = eulerian_coefficients(sol, const(g, 1), const(g, 1), 1.0)
        np.testing.assert_allclose(co.D.values, 1.0)
        np.testing.assert_allclose(co.beta.values, 1.0)

    def test_stretched_coefficients(self):
        g = make_uniform_grid(1.0, 16)
        sol = reconstruct(make_log_quadratic(const(g, 1)), const(g, 1), 3.0)
        co = eulerian_coefficients(sol, const(g, 1), const(g, 1), 2.0)
        assert co.D.grid.length == 2.0
        np.testing.assert_allclose(co.D.values, 2.0, rtol=1e-14)
        np.testing.assert_allclose(co.beta.values, 0.5, rtol=1e-14)

    def test_grown_coefficients(self):
        g = make_uniform_grid(1.0, 16)
        sol = reconstruct(make_log_quadratic(const(g, 1)), const(g, 2), 0.0)
        co = eulerian_coefficients(sol, const(g, 1), const(g, 1), 2.0)
        np.testing.assert_allclose(co.D.values, 1.0)
        np.testing.assert_allclose(co.beta.values, 1.0)

    def test_inconsistent_length(self):
        g = make_uniform_grid(1.0, 16)
        sol = reconstruct(make_log_quadratic(const(g, 1)), const(g, 1), 0.0)
        with pytest.raises(InconsistentGeometry):
            eulerian_coefficients(sol, const(g, 1), const(g, 1), 1.5)

    def test_identity_matches_lagrangian(self):
        g = make_uniform_grid(1.0, 64)
        one = const(g, 1)
        sol = reconstruct(make_log_quadratic(one), one, 0.0)
        Ne = solve_nutrient_eulerian(eulerian_coefficients(sol, one, one, 1.0), 1.0, 0.0, sol.y).N
        Nl = solve_nutrient_lagrangian(one, one, one, 1.0, 0.0).N
        assert np.abs(Ne.values - Nl.values).max() <= 2e-4
        assert Ne.values[32] == pytest.approx(math.sinh(0.5) / math.sinh(1.0), abs=2e-4)

    def test_zero_boundary(self):
        g = make_uniform_grid(1.0, 16)
        sol = elastic_response(make_log_quadratic(const(g, 1)), const(g, 1.5), 1.2)
        co = eulerian_coefficients(sol, const(g, 1), const(g, 1), 1.2)
        np.testing.assert_array_equal(solve_nutrient_eulerian(co, 0.0, 0.0, sol.y).N.values, 0.0)

    def test_doubled_growth_agreement(self):
        g = make_uniform_grid(1.0, 256)
        one = const(g, 1)
        sol = elastic_response(make_log_quadratic(one), const(g, 2), 2.0)
        Ne = solve_nutrient_eulerian(eulerian_coefficients(sol, one, one, 2.0), 1.0, 0.0, sol.y)
        Nl = solve_nutrient_lagrangian(const(g, 2), one, one, 1.0, 0.0)
        assert np.abs(Ne.N.values - Nl.N.values).max() <= 5e-3
        assert Ne.n.grid.length == 2.0

    def test_stretch_cancellation(self):
        # the reference-configuration problem never sees l0; the current-configuration
        # solve does, and must agree for every l0
        g = make_uniform_grid(1.0, 128)
        G = ScalarField.from_function(g, lambda x: 1 + 0.4 * np.sin(2 * x))
        D0 = ScalarField.from_function(g, lambda x: 1 + x)
        B0 = ScalarField.from_function(g, lambda x: 2 - x)
        model = make_log_quadratic(ScalarField.from_function(g, lambda x: 1 + 0.5 * x))
        Nl = solve_nutrient_lagrangian(G, D0, B0, 0.8, 0.3).N
        a1, c1 = lagrangian_coefficients(G, D0, B0)
        for l0 in (0.7, 1.0, 1.8):
            sol = elastic_response(model, G, l0)
            a2, c2 = lagrangian_coefficients(G, D0, B0)
            assert np.array_equal(a1.values, a2.values) and np.array_equal(c1.values, c2.values)
            Ne = solve_nutrient_eulerian(eulerian_coefficients(sol, D0, B0, l0), 0.8, 0.3, sol.y).N
            assert np.abs(Ne.values - Nl.values).max() <= 1e-4


def test_empirical_lipschitz(rng):
    g = make_uniform_grid(1.0, 64)
    one = const(g, 1)
    ratios = []
    for _ in range(100):
        G1, G2 = growth_pair(rng, g)
        dG = np.abs(G1.values - G2.values).max()
        N1 = solve_nutrient_lagrangian(G1, one, one, 1.0, 1.0).N.values
        N2 = solve_nutrient_lagrangian(G2, one, one, 1.0, 1.0).N.values
        ratios.append(np.abs(N1 - N2).max() / dG)
    ratios = np.array(ratios)
    assert np.all(np.isfinite(ratios))
    assert ratios[50:].max() <= 2 * ratios[:50].max()
