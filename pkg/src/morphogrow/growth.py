"""Product-form growth law and the quasi-static right-hand side.

The growth rate at ``X`` is ``gamma(X) * mu(S) * eta(N(X)) * G(X)``, with a
logistic stress response ``mu`` and a saturating nutrient response ``eta``.
Because the rate is linear in ``G`` with a coefficient confined to
``[c_min, c_max]``, the exponentials ``exp(c_min t)`` and ``exp(c_max t)``
act as sub- and supersolutions for ``G(0) = 1``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
from scipy.special import expit

from .elasticity import ElasticSolution, elastic_response
from .energy import EnergyModel
from .errors import GrowthCollapse, InvalidArgument
from .numerics import ScalarField, eval_linear
from .nutrient import NutrientSolution, solve_nutrient_lagrangian


@dataclass(frozen=True)
class ExampleLawParams:
    gamma: ScalarField
    mu0: float
    mu1: float
    S_ref: float
    eta0: float
    eta1: float
    N_ref: float
    gamma0: Optional[float] = None
    gamma1: Optional[float] = None

    def __post_init__(self):
        if self.gamma0 is None:
            object.__setattr__(self, "gamma0", self.gamma.min())
        if self.gamma1 is None:
            object.__setattr__(self, "gamma1", self.gamma.max())
        problems = []
        if not 0 < self.gamma0 <= self.gamma1:
            problems.append("need 0 < gamma0 <= gamma1")
        elif self.gamma.min() < self.gamma0 or self.gamma.max() > self.gamma1:
            problems.append("gamma field leaves [gamma0, gamma1]")
        if not self.mu0 <= self.mu1:
            problems.append("need mu0 <= mu1")
        if not 0 <= self.eta0 <= self.eta1:
            problems.append("need 0 <= eta0 <= eta1")
        if not self.S_ref > 0:
            problems.append("S_ref must be positive")
        if not self.N_ref > 0:
            problems.append("N_ref must be positive")
        if problems:
            raise InvalidArgument("; ".join(problems))


@dataclass(frozen=True)
class GrowthEnvelope:
    c_min: float
    c_max: float

    def bounds(self, t: float, G0=1.0):
        return G0 * np.exp(self.c_min * t), G0 * np.exp(self.c_max * t)


def response_mu(params: ExampleLawParams, S):
    """Logistic in ``S / S_ref`` between ``mu0`` and ``mu1``."""
    return params.mu0 + (params.mu1 - params.mu0) * expit(np.asarray(S) / params.S_ref)


def response_eta(params: ExampleLawParams, N):
    N = np.asarray(N, dtype=float)
    if np.any(N < 0):
        raise InvalidArgument("nutrient concentration must be nonnegative")
    return params.eta0 + (params.eta1 - params.eta0) * -np.expm1(-N / params.N_ref)


def example_law(params: ExampleLawParams, G, S, N, X):
    G = np.asarray(G, dtype=float)
    if np.any(~(G > 0)):
        raise GrowthCollapse("growth value must be strictly positive")
    gamma = eval_linear(params.gamma, X)
    return gamma * response_mu(params, S) * response_eta(params, N) * G


def envelope(params: ExampleLawParams) -> GrowthEnvelope:
    corners = [
        g * m * e
        for g, m, e in itertools.product(
            (params.gamma0, params.gamma1),
            (params.mu0, params.mu1),
            (params.eta0, params.eta1),
        )
    ]
    return GrowthEnvelope(min(corners), max(corners))


@dataclass(frozen=True)
class GrowthContext:
    """Everything the right-hand side needs besides ``G`` itself."""

    energy: EnergyModel
    law: ExampleLawParams
    D0: ScalarField
    beta0: ScalarField
    nL: float
    nR: float
    l0: float
    root_tol: float = 1e-12

    @property
    def grid(self):
        return self.energy.grid


def quasi_static_state(ctx: GrowthContext, G: ScalarField) -> Tuple[ElasticSolution, NutrientSolution]:
    """Elastic and nutrient equilibria for the instantaneous growth field."""
    if not G.min() > 0:
        bad = int(np.argmin(G.values))
        raise GrowthCollapse(
            f"growth field is non-positive at X={G.nodes[bad]:g} (G={G.values[bad]:g})"
        )
    elastic = elastic_response(ctx.energy, G, ctx.l0, ctx.root_tol)
    nutrient = solve_nutrient_lagrangian(G, ctx.D0, ctx.beta0, ctx.nL, ctx.nR)
    return elastic, nutrient


def growth_rhs(ctx: GrowthContext, G: ScalarField) -> ScalarField:
    elastic, nutrient = quasi_static_state(ctx, G)
    # roundoff may push N a hair below zero next to a zero boundary value
    N = np.maximum(nutrient.N.values, 0.0)
    rate = example_law(ctx.law, G.values, elastic.S, N, G.nodes)
    return G.with_values(rate)
