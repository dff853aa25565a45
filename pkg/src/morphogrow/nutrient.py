"""Elliptic nutrient problem and its pullback to the reference configuration.

In the current configuration ``[0, l0]`` the concentration solves

    (D n')' = beta n,   n(0) = nL,  n(l0) = nR,

with ``D = (D0 Fe) o y^-1`` and ``beta = (beta0 / Fe) o y^-1``.  Substituting
``x = y(X)`` with ``y' = Fe G`` turns this into the reference-configuration
problem

    -((D0 / G) N')' + beta0 G N = 0   on [0, L0],

in which the elastic stretch cancels.  The latter is the production path;
the current-configuration solve is kept as an independent cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .elasticity import ElasticSolution
from .errors import GrowthCollapse, InconsistentGeometry, InvalidArgument, InvalidCoefficient
from .numerics import Grid, ScalarField, eval_linear, invert_monotone_field, solve_tridiagonal

GEOMETRY_TOL = 1e-9


@dataclass(frozen=True)
class NutrientSolution:
    N: ScalarField
    n: Optional[ScalarField] = None


@dataclass(frozen=True)
class CurrentCoefficients:
    D: ScalarField
    beta: ScalarField


def lagrangian_coefficients(G: ScalarField, D0: ScalarField, beta0: ScalarField):
    """Return ``(D0 / G, beta0 * G)`` on the reference grid."""
    if not G.min() > 0:
        raise GrowthCollapse("growth field must be strictly positive")
    if G.grid != D0.grid or G.grid != beta0.grid:
        raise InvalidArgument("coefficient fields must share the growth grid")
    a = G.with_values(D0.values / G.values)
    c = G.with_values(beta0.values * G.values)
    return a, c


def solve_sturm_liouville(a: ScalarField, c: ScalarField, left: float, right: float) -> ScalarField:
    """Solve ``-(a u')' + c u = 0`` with Dirichlet values at both ends.

    Conservative three-point scheme with the arithmetic mean of ``a`` on
    each cell face.  Boundary rows are identity rows, so the matrix is an
    M-matrix whenever ``a > 0`` and ``c >= 0``.
    """
    if a.grid != c.grid:
        raise InvalidArgument("a and c must share a grid")
    if not a.min() > 0:
        raise InvalidCoefficient("diffusion coefficient must be strictly positive")
    if not c.min() >= 0:
        raise InvalidCoefficient("absorption coefficient must be nonnegative")
    h = a.grid.spacing
    af = 0.5 * (a.values[1:] + a.values[:-1])
    n = a.grid.node_count

    diag = np.empty(n)
    lower = np.zeros(n - 1)
    upper = np.zeros(n - 1)
    rhs = np.zeros(n)
    diag[0] = diag[-1] = 1.0
    rhs[0], rhs[-1] = left, right
    diag[1:-1] = af[:-1] + af[1:] + h * h * c.values[1:-1]
    lower[:-1] = -af[:-1]
    upper[1:] = -af[1:]
    return ScalarField(a.grid, solve_tridiagonal(lower, diag, upper, rhs))


def _check_boundary_values(nL, nR):
    if not (nL >= 0 and nR >= 0):
        raise InvalidArgument("boundary nutrient values must be nonnegative")


def solve_nutrient_lagrangian(
    G: ScalarField, D0: ScalarField, beta0: ScalarField, nL: float, nR: float
) -> NutrientSolution:
    _check_boundary_values(nL, nR)
    a, c = lagrangian_coefficients(G, D0, beta0)
    return NutrientSolution(solve_sturm_liouville(a, c, nL, nR))


def eulerian_coefficients(
    sol: ElasticSolution, D0: ScalarField, beta0: ScalarField, l0: float
) -> CurrentCoefficients:
    """Diffusion and absorption on a uniform grid over ``[0, l0]``."""
    y = sol.y
    if abs(y.values[-1] - l0) > GEOMETRY_TOL * max(1.0, l0) or y.values[0] != 0.0:
        raise InconsistentGeometry(
            f"deformation spans [{y.values[0]}, {y.values[-1]}], expected [0, {l0}]"
        )
    cur = Grid(float(l0), y.grid.intervals)
    x = np.clip(cur.nodes, y.values[0], y.values[-1])
    X = invert_monotone_field(y, x)
    Fe = eval_linear(sol.Fe, X)
    D = ScalarField(cur, eval_linear(D0, X) * Fe)
    beta = ScalarField(cur, eval_linear(beta0, X) / Fe)
    return CurrentCoefficients(D, beta)


def solve_nutrient_eulerian(
    coeffs: CurrentCoefficients, nL: float, nR: float, y: ScalarField
) -> NutrientSolution:
    _check_boundary_values(nL, nR)
    n = solve_sturm_liouville(coeffs.D, coeffs.beta, nL, nR)
    xs = np.clip(y.values, 0.0, n.grid.length)
    N = np.asarray(eval_linear(n, xs), dtype=float)
    # y(0) = 0 and y(L0) = l0 by construction
    N[0], N[-1] = n.values[0], n.values[-1]
    return NutrientSolution(ScalarField(y.grid, N), n)
