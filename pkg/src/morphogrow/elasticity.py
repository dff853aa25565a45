"""Quasi-static elastic response of a grown rod with clamped ends.

In one dimension the Euler-Lagrange equation of the hyperelastic problem
forces a constant stress ``S``, and the elastic stretch at material point
``X`` is ``pi0(X, S)``.  The boundary condition ``y(L0) = l0`` then reduces
the variational problem to the scalar equation

    Phi(S) = int_0^L0 pi0(X, S) G(X) dX - l0 = 0,

which is strictly increasing in ``S``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .energy import EnergyModel
from .errors import GrowthCollapse, InvalidArgument, NumericFailure
from .numerics import ScalarField, cumulative_integral, find_root_monotone, integrate

BOUNDARY_FACTOR = 10.0


@dataclass(frozen=True)
class ElasticSolution:
    S: float
    Fe: ScalarField
    g: ScalarField
    y: ScalarField

    def boundary_residual(self, l0: float) -> float:
        return abs(float(self.y.values[-1]) - l0)


def _check_growth(G: ScalarField):
    if not G.min() > 0:
        bad = int(np.argmin(G.values))
        raise GrowthCollapse(
            f"growth field is non-positive at X={G.nodes[bad]:g} (G={G.values[bad]:g})"
        )


def phi_residual(model: EnergyModel, G: ScalarField, S: float, l0: float) -> float:
    p = model.pi0(G.nodes, S)
    return integrate(G.with_values(p * G.values)) - l0


def _phi_slope(model: EnergyModel, G: ScalarField, S: float) -> float:
    p = model.pi0(G.nodes, S)
    return integrate(G.with_values(G.values / model.d2W_dp2(G.nodes, p)))


def solve_stress(model: EnergyModel, G: ScalarField, l0: float, tol: float = 1e-12) -> float:
    """Constant stress ``S`` with ``|Phi(S)| <= tol``."""
    _check_growth(G)
    if not l0 > 0:
        raise InvalidArgument(f"l0 must be positive, got {l0}")
    x_mid = 0.5 * G.grid.length
    guess = float(model.dW_dp(x_mid, l0 / integrate(G)))
    return find_root_monotone(
        lambda s: phi_residual(model, G, s, l0),
        guess,
        tol,
        fprime=lambda s: _phi_slope(model, G, s),
    )


def reconstruct(model: EnergyModel, G: ScalarField, S: float) -> ElasticSolution:
    _check_growth(G)
    Fe = G.with_values(model.pi0(G.nodes, S))
    g = cumulative_integral(G)
    y = cumulative_integral(G.with_values(Fe.values * G.values))
    return ElasticSolution(float(S), Fe, g, y)


def elastic_response(
    model: EnergyModel, G: ScalarField, l0: float, tol: float = 1e-12
) -> ElasticSolution:
    S = solve_stress(model, G, l0, tol)
    sol = reconstruct(model, G, S)
    miss = sol.boundary_residual(l0)
    if miss > BOUNDARY_FACTOR * tol:
        raise NumericFailure(f"boundary condition missed by {miss:g}")
    return sol
