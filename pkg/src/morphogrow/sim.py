"""Fixed-step RK4 march of the growth field with quasi-static coupling.

Stress and nutrient are recomputed from the instantaneous growth field at
every Runge-Kutta stage; only ``G`` carries time dynamics.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Dict, List, Optional

import numpy as np

from .errors import GrowthCollapse, InvalidArgument
from .growth import GrowthContext, envelope, growth_rhs, quasi_static_state
from .numerics import ScalarField

MAX_PRINCIPLE_SLACK = 1e-12
ENVELOPE_EPS = 1e-8


@dataclass(frozen=True)
class SimState:
    t: float
    G: ScalarField


@dataclass(frozen=True)
class Problem:
    ctx: GrowthContext
    G0: ScalarField
    T: float
    n_steps: int
    snapshot_every: int = 1

    def __post_init__(self):
        if not self.T >= 0:
            raise InvalidArgument("final time must be nonnegative")
        if self.n_steps < 1 or self.snapshot_every < 1:
            raise InvalidArgument("n_steps and snapshot_every must be at least 1")
        if self.G0.grid != self.ctx.grid:
            raise InvalidArgument("initial growth field must live on the problem grid")

    @property
    def dt(self) -> float:
        return self.T / self.n_steps


@dataclass(frozen=True)
class Check:
    passed: bool
    worst_value: float

    def to_dict(self):
        return {"pass": bool(self.passed), "worst_value": float(self.worst_value)}


@dataclass(frozen=True)
class Diagnostics:
    boundary_residual: float
    G_min: float
    G_max: float
    N_min: float
    N_max: float
    envelope_lower_margin: float
    envelope_upper_margin: float
    checks: Dict[str, Check] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks.values())


@dataclass(frozen=True)
class Snapshot:
    step: int
    t: float
    S: float
    G: ScalarField
    g: ScalarField
    y: ScalarField
    Fe: ScalarField
    N: ScalarField
    diagnostics: Optional[Diagnostics] = None


@dataclass
class Trajectory:
    problem: Problem
    snapshots: List[Snapshot] = field(default_factory=list)

    @property
    def final(self) -> Snapshot:
        return self.snapshots[-1]

    def checks(self) -> Dict[str, Check]:
        """Aggregate of the per-snapshot checks over the whole run."""
        diags = [s.diagnostics for s in self.snapshots]
        return {
            "positivity": Check(
                all(d.checks["positivity"].passed for d in diags),
                min(d.G_min for d in diags),
            ),
            "envelope": Check(
                all(d.checks["envelope"].passed for d in diags),
                min(d.checks["envelope"].worst_value for d in diags),
            ),
            "boundary_residual_max": Check(
                all(d.checks["boundary_residual"].passed for d in diags),
                max(d.boundary_residual for d in diags),
            ),
            "max_principle": Check(
                all(d.checks["max_principle"].passed for d in diags),
                max(d.checks["max_principle"].worst_value for d in diags),
            ),
        }


def rk4_step(state: SimState, dt: float, ctx: GrowthContext) -> SimState:
    """One classical Runge-Kutta step; every stage field must stay positive."""
    if not dt > 0:
        raise InvalidArgument(f"time step must be positive, got {dt}")
    G = state.G
    k1 = growth_rhs(ctx, G).values
    k2 = growth_rhs(ctx, _stage(G, 0.5 * dt, k1, state.t)).values
    k3 = growth_rhs(ctx, _stage(G, 0.5 * dt, k2, state.t)).values
    k4 = growth_rhs(ctx, _stage(G, dt, k3, state.t)).values
    new = _stage(G, dt / 6.0, k1 + 2.0 * k2 + 2.0 * k3 + k4, state.t)
    return SimState(state.t + dt, new)


def _stage(G: ScalarField, h: float, k: np.ndarray, t: float) -> ScalarField:
    values = G.values + h * k
    if not np.all(values > 0):
        bad = int(np.argmin(values))
        raise GrowthCollapse(
            f"growth field collapsed near t={t:g} at X={G.nodes[bad]:g} (G={values[bad]:g})"
        )
    return G.with_values(values)


def make_snapshot(problem: Problem, state: SimState, step: int) -> Snapshot:
    elastic, nutrient = quasi_static_state(problem.ctx, state.G)
    snap = Snapshot(
        step=step,
        t=state.t,
        S=elastic.S,
        G=state.G,
        g=elastic.g,
        y=elastic.y,
        Fe=elastic.Fe,
        N=nutrient.N,
    )
    return replace(snap, diagnostics=check_wellposedness(snap, problem))


def check_wellposedness(snapshot: Snapshot, problem: Problem) -> Diagnostics:
    """Positivity, envelope containment, boundary restoration, maximum principle."""
    ctx = problem.ctx
    G = snapshot.G.values
    N = snapshot.N.values
    t = snapshot.t

    env = envelope(ctx.law)
    G0 = problem.G0.values
    lower, upper = env.bounds(t, G0)
    eps = ENVELOPE_EPS * upper
    lower_margin = float(np.min(G - (lower - eps)))
    upper_margin = float(np.min((upper + eps) - G))

    residual = abs(float(snapshot.y.values[-1]) - ctx.l0)
    n_top = max(ctx.nL, ctx.nR)
    violation = max(-float(N.min()), float(N.max()) - n_top)

    checks = {
        "positivity": Check(bool(G.min() > 0), float(G.min())),
        "envelope": Check(
            lower_margin >= 0 and upper_margin >= 0, min(lower_margin, upper_margin)
        ),
        "boundary_residual": Check(residual <= 10.0 * ctx.root_tol, residual),
        "max_principle": Check(violation <= MAX_PRINCIPLE_SLACK, violation),
    }
    return Diagnostics(
        boundary_residual=residual,
        G_min=float(G.min()),
        G_max=float(G.max()),
        N_min=float(N.min()),
        N_max=float(N.max()),
        envelope_lower_margin=lower_margin,
        envelope_upper_margin=upper_margin,
        checks=checks,
    )


def run(problem: Problem, snapshots: bool = True) -> Trajectory:
    """March from ``t = 0`` to ``T``.

    Snapshots are taken at ``t = 0``, every ``snapshot_every`` steps and at
    ``t = T``.  With ``snapshots=False`` only the first and last are kept.
    On growth collapse the exception carries the partial trajectory.
    """
    traj = Trajectory(problem)
    state = SimState(0.0, problem.G0)
    try:
        traj.snapshots.append(make_snapshot(problem, state, 0))
        if problem.T == 0:
            return traj
        dt = problem.dt
        for k in range(1, problem.n_steps + 1):
            state = rk4_step(state, dt, problem.ctx)
            state = SimState(problem.T * k / problem.n_steps, state.G)
            last = k == problem.n_steps
            if last or (snapshots and k % problem.snapshot_every == 0):
                traj.snapshots.append(make_snapshot(problem, state, k))
    except GrowthCollapse as exc:
        raise GrowthCollapse(str(exc), partial=traj) from exc
    return traj

