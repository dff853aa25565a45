import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from morphogrow.energy import (
    LogQuadraticEnergy,
    dpi0_dS,
    dpi0_dX,
    dW_dp,
    make_log_quadratic,
    make_quartic_log,
    pi0,
    stress_bracket,
    validate_energy,
)
from morphogrow.errors import InvalidArgument, InvalidCoefficient, InvalidStretch
from morphogrow.numerics import ScalarField, make_uniform_grid

GRID = make_uniform_grid(1.0, 16)
PROBES = [0.01, 0.1, 0.5, 1.0, 2.0, 10.0]


def const_mu(v, grid=GRID):
    return ScalarField.constant(grid, v)


def affine_mu(a=1.0, b=1.0, grid=GRID):
    return ScalarField.from_function(grid, lambda x: a + b * x)


@pytest.fixture(params=["log_quadratic", "quartic_log"])
def model(request):
    mu = affine_mu(1.0, 0.5)
    return make_log_quadratic(mu) if request.param == "log_quadratic" else make_quartic_log(mu)


class TestLogQuadratic:
    def test_unstressed(self):
        m = make_log_quadratic(const_mu(1.0))
        assert m.W(0.3, 1.0) == 0.0

    def test_energy_value(self):
        m = make_log_quadratic(const_mu(1.0))
        assert m.W(0.3, 2.0) == pytest.approx(4 - 1 - 2 * math.log(2), rel=1e-15)

    def test_second_derivative(self):
        assert make_log_quadratic(const_mu(1.0)).d2W_dp2(0.5, 1.0) == 4.0

    @pytest.mark.parametrize("mu, p, expected", [(1.0, 1.0, 0.0), (1.0, 2.0, 3.0), (2.0, 0.5, -6.0)])
    def test_dW_dp(self, mu, p, expected):
        assert dW_dp(make_log_quadratic(const_mu(mu)), 0.2, p) == pytest.approx(expected, abs=1e-15)

    def test_invalid_stretch(self):
        with pytest.raises(InvalidStretch):
            dW_dp(make_log_quadratic(const_mu(1.0)), 0.2, 0.0)

    def test_rejects_nonpositive_mu(self):
        with pytest.raises(InvalidCoefficient):
            make_log_quadratic(ScalarField.from_function(GRID, lambda x: x))

    @pytest.mark.parametrize(
        "mu, S, expected",
        [(1.0, 0.0, 1.0), (1.0, 3.0, 2.0), (2.0, -3.0, (-3 + math.sqrt(73)) / 8)],
    )
    def test_pi0_closed_form(self, mu, S, expected):
        assert pi0(make_log_quadratic(const_mu(mu)), 0.4, S) == pytest.approx(expected, rel=1e-15)

    def test_pi0_zero_stress_exact(self):
        m = make_log_quadratic(ScalarField.from_function(GRID, lambda x: 0.3 + 7 * x * x))
        assert np.all(m.pi0(GRID.nodes, 0.0) == 1.0)

    def test_pi0_large_compression_no_cancellation(self):
        m = make_log_quadratic(const_mu(1.0))
        p = m.pi0(0.0, -1e8)
        assert m.dW_dp(0.0, p) == pytest.approx(-1e8, rel=1e-14)

    @pytest.mark.parametrize("S, expected", [(0.0, 0.25), (3.0, 0.4)])
    def test_dpi0_dS(self, S, expected):
        assert dpi0_dS(make_log_quadratic(const_mu(1.0)), 0.5, S) == pytest.approx(expected, rel=1e-15)

    def test_dpi0_dX_constant_mu(self):
        m = make_log_quadratic(const_mu(2.0))
        assert np.all(dpi0_dX(m, GRID.nodes, 2.5) == 0.0)

    def test_dpi0_dX_zero_stress(self):
        assert dpi0_dX(make_log_quadratic(affine_mu()), 0.5, 0.0) == 0.0

    def test_dpi0_dX_finite_difference_at_left_end(self):
        m = make_log_quadratic(affine_mu())
        h = 1e-5
        # second-order one-sided difference at X = 0
        fd = (-3 * m.pi0(0.0, 3.0) + 4 * m.pi0(h, 3.0) - m.pi0(2 * h, 3.0)) / (2 * h)
        assert dpi0_dX(m, 0.0, 3.0) == pytest.approx(fd, rel=1e-5)


class TestGenericModel:
    def test_roundtrip(self, model):
        S = np.linspace(-10, 10, 41)
        for X in GRID.nodes:
            p = model.pi0(X, S)
            np.testing.assert_allclose(model.dW_dp(X, p), S, rtol=0, atol=1e-10)

    def test_pi0_monotone_in_S(self, model):
        S = np.linspace(-10, 10, 101)
        for X in GRID.nodes:
            assert np.all(np.diff(model.pi0(X, S)) > 0)

    def test_dpi0_dS_matches_finite_difference(self, model):
        h = 1e-6
        for X in GRID.nodes[::3]:
            for S in np.linspace(-5, 5, 11):
                fd = (model.pi0(X, S + h) - model.pi0(X, S - h)) / (2 * h)
                an = dpi0_dS(model, X, S)
                assert an > 0
                assert abs(fd - an) <= 1e-6 * an

    def test_quartic_matches_cubic_root(self):
        # mu = 1: p^3 - 1/p = S; S = 7.5 has root p = 2
        m = make_quartic_log(const_mu(1.0))
        assert m.pi0(0.5, 8 - 0.5) == pytest.approx(2.0, rel=1e-14)

    @given(st.floats(-1e3, 1e3))
    def test_quartic_residual(self, S):
        m = make_quartic_log(affine_mu(0.5, 2.0))
        p = m.pi0(GRID.nodes, S)
        assert np.all(p > 0)
        assert np.abs(m.dW_dp(GRID.nodes, p) - S).max() <= max(1e-10, 1e-14 * abs(S))


class TestStressBracket:
    def test_identity(self):
        b = stress_bracket(make_log_quadratic(const_mu(1.0)), 1.0, 1.0)
        assert (b.sigma0, b.sigma1, b.p0, b.p1) == (0.0, 0.0, 1.0, 1.0)

    def test_constant_mu(self):
        b = stress_bracket(make_log_quadratic(const_mu(1.0)), 0.5, 2.0)
        assert b.sigma0 == pytest.approx(-3.0)
        assert b.sigma1 == pytest.approx(3.0)
        assert b.p0 == pytest.approx(0.5)
        assert b.p1 == pytest.approx(2.0)

    def test_affine_mu(self):
        b = stress_bracket(make_log_quadratic(affine_mu(1.0, 1.0)), 0.5, 2.0)
        assert b.sigma0 == pytest.approx(-6.0)
        assert b.sigma1 == pytest.approx(6.0)

    def test_bad_order(self):
        with pytest.raises(InvalidArgument):
            stress_bracket(make_log_quadratic(const_mu(1.0)), 2.0, 0.5)

    def test_containment_lattice(self, model):
        b = stress_bracket(model, 0.6, 1.7)
        X = np.linspace(0, 1, 50)
        for S in np.linspace(b.sigma0, b.sigma1, 50):
            p = model.pi0(X, S)
            assert np.all((p >= b.p0 * (1 - 1e-14)) & (p <= b.p1 * (1 + 1e-14)))


class _ShiftedEnergy(LogQuadraticEnergy):
    kind = "broken"

    def w(self, p):
        return super().w(p) + 0.1


class TestValidate:
    def test_default_passes(self):
        report = validate_energy(make_log_quadratic(const_mu(1.0)), PROBES)
        assert report.passed, report.format()
        assert report["W(X,1)=0"].worst == 0.0

    def test_quartic_passes(self):
        assert validate_energy(make_quartic_log(affine_mu()), PROBES).passed

    def test_broken_model(self):
        report = validate_energy(_ShiftedEnergy(const_mu(1.0)), PROBES)
        assert not report.passed
        assert not report["W(X,1)=0"].passed
        assert report["W(X,1)=0"].worst == pytest.approx(0.1)

    def test_blow_up(self):
        m = make_log_quadratic(const_mu(1.0))
        assert m.W(0.0, 0.01) > m.W(0.0, 0.1)

    def test_too_few_small_probes(self):
        report = validate_energy(make_log_quadratic(const_mu(1.0)), [0.5, 1.0, 2.0])
        assert not report["blow-up as p->0"].passed

    def test_report_dict(self):
        d = validate_energy(make_log_quadratic(const_mu(1.0)), PROBES).to_dict()
        assert d["passed"] is True
        assert set(d["checks"]) == {"W(X,1)=0", "W>=0", "W_pp>0", "W_p increasing", "blow-up as p->0"}
