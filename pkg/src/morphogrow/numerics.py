"""Grid, field, quadrature and scalar/linear solver primitives.

Fields are piecewise linear between the nodes of a uniform grid and all
quadrature is the composite trapezoid rule, which integrates such fields
exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .errors import (
    InvalidArgument,
    NoBracket,
    NotMonotone,
    NumericFailure,
    OutOfDomain,
    OutOfRange,
    SingularSystem,
)

DOMAIN_SLACK = 1e-12


@dataclass(frozen=True)
class Grid:
    """Uniform grid ``X_i = i * length / intervals`` on ``[0, length]``."""

    length: float
    intervals: int
    nodes: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not (math.isfinite(self.length) and self.length > 0):
            raise InvalidArgument(f"grid length must be positive, got {self.length}")
        if int(self.intervals) != self.intervals or self.intervals < 2:
            raise InvalidArgument(f"grid needs at least 2 intervals, got {self.intervals}")
        object.__setattr__(self, "intervals", int(self.intervals))
        nodes = np.arange(self.intervals + 1) * (self.length / self.intervals)
        nodes[-1] = self.length
        nodes.flags.writeable = False
        object.__setattr__(self, "nodes", nodes)

    @property
    def node_count(self) -> int:
        return self.intervals + 1

    @property
    def spacing(self) -> float:
        return self.length / self.intervals


def make_uniform_grid(L: float, M: int) -> Grid:
    return Grid(float(L), M)


@dataclass(frozen=True, eq=False)
class ScalarField:
    """Nodal values of a piecewise-linear function on a :class:`Grid`."""

    grid: Grid
    values: np.ndarray

    def __post_init__(self):
        values = np.array(self.values, dtype=float)
        if values.shape != (self.grid.node_count,):
            raise InvalidArgument(
                f"field has {values.size} values for {self.grid.node_count} nodes"
            )
        if not np.all(np.isfinite(values)):
            raise InvalidArgument("field values must be finite")
        values.flags.writeable = False
        object.__setattr__(self, "values", values)

    @classmethod
    def from_function(cls, grid: Grid, f) -> "ScalarField":
        return cls(grid, np.broadcast_to(f(grid.nodes), grid.nodes.shape))

    @classmethod
    def constant(cls, grid: Grid, value: float) -> "ScalarField":
        return cls(grid, np.full(grid.node_count, float(value)))

    @property
    def nodes(self) -> np.ndarray:
        return self.grid.nodes

    def with_values(self, values) -> "ScalarField":
        return ScalarField(self.grid, values)

    def min(self) -> float:
        return float(self.values.min())

    def max(self) -> float:
        return float(self.values.max())

    def __call__(self, x):
        return eval_linear(self, x)


def integrate(f: ScalarField) -> float:
    """Composite trapezoid integral; identical to the last cumulative node."""
    return float(cumulative_integral(f).values[-1])


def cumulative_integral(f: ScalarField) -> ScalarField:
    v = f.values
    h = f.grid.spacing
    out = np.empty_like(v)
    out[0] = 0.0
    np.cumsum(0.5 * h * (v[1:] + v[:-1]), out=out[1:])
    return ScalarField(f.grid, out)


def solve_tridiagonal(lower, diag, upper, rhs) -> np.ndarray:
    """Thomas algorithm for a tridiagonal system.

    Parameters
    ----------
    lower : array_like, length n-1
        Sub-diagonal, ``lower[i]`` couples row ``i+1`` to unknown ``i``.
    diag : array_like, length n
    upper : array_like, length n-1
        Super-diagonal, ``upper[i]`` couples row ``i`` to unknown ``i+1``.
    rhs : array_like, length n

    No pivoting is done; callers supply diagonally dominant systems.
    """
    a = np.asarray(lower, dtype=float)
    b = np.array(diag, dtype=float)
    c = np.asarray(upper, dtype=float)
    d = np.array(rhs, dtype=float)
    n = b.size
    if n == 0 or d.size != n or a.size != n - 1 or c.size != n - 1:
        raise InvalidArgument("inconsistent tridiagonal dimensions")
    scale = max(np.abs(b).max(), np.abs(a).max(initial=0.0), np.abs(c).max(initial=0.0))
    tiny = 1e-14 * scale if scale > 0 else 0.0

    # plain lists are faster than numpy scalars in the sweep
    a_, b_, c_, d_ = a.tolist(), b.tolist(), c.tolist(), d.tolist()
    if abs(b_[0]) <= tiny:
        raise SingularSystem("zero pivot in row 0")
    for k in range(1, n):
        m = a_[k - 1] / b_[k - 1]
        b_[k] -= m * c_[k - 1]
        d_[k] -= m * d_[k - 1]
        if abs(b_[k]) <= tiny:
            raise SingularSystem(f"zero pivot in row {k}")
    x = [0.0] * n
    x[-1] = d_[-1] / b_[-1]
    for k in range(n - 2, -1, -1):
        x[k] = (d_[k] - c_[k] * x[k + 1]) / b_[k]
    return np.array(x)


def find_root_monotone(
    f: Callable[[float], float],
    guess: float,
    tol: float,
    fprime: Optional[Callable[[float], float]] = None,
    max_doublings: int = 60,
    max_iter: int = 200,
) -> float:
    """Root of a continuous, strictly increasing scalar function.

    A sign-changing bracket is grown geometrically around ``guess``
    (half-width 1, doubled up to ``max_doublings`` times).  Inside the
    bracket, Newton steps (when ``fprime`` is given) or secant steps are
    taken and replaced by bisection whenever they leave the bracket or
    stop shrinking it fast enough.

    Returns ``s`` with ``|f(s)| <= tol``.
    """
    if not tol > 0:
        raise InvalidArgument("tolerance must be positive")

    def ev(x):
        fx = float(f(x))
        if not math.isfinite(fx):
            raise NumericFailure(f"non-finite function value at {x!r}")
        return fx

    x0 = float(guess)
    f0 = ev(x0)
    if abs(f0) <= tol:
        return x0

    width = 1.0
    if f0 < 0:
        lo, flo = x0, f0
        for _ in range(max_doublings + 1):
            hi = x0 + width
            fhi = ev(hi)
            if fhi > 0:
                break
            lo, flo = hi, fhi
            width *= 2.0
        else:
            raise NoBracket(f"no sign change above {x0!r}")
    else:
        hi, fhi = x0, f0
        for _ in range(max_doublings + 1):
            lo = x0 - width
            flo = ev(lo)
            if flo < 0:
                break
            hi, fhi = lo, flo
            width *= 2.0
        else:
            raise NoBracket(f"no sign change below {x0!r}")

    if abs(flo) <= tol:
        return lo
    if abs(fhi) <= tol:
        return hi

    x, fx = (lo, flo) if abs(flo) < abs(fhi) else (hi, fhi)
    prev_width = math.inf
    for _ in range(max_iter):
        width = hi - lo
        cand = math.nan
        if fprime is not None:
            dfx = float(fprime(x))
            if math.isfinite(dfx) and dfx > 0:
                cand = x - fx / dfx
        else:
            cand = lo - flo * width / (fhi - flo)
        # bisect if the step leaves the bracket or the last step did not halve it
        if not (lo < cand < hi) or width > 0.5 * prev_width:
            cand = lo + 0.5 * width
            if not (lo < cand < hi):
                break
        prev_width = width
        fc = ev(cand)
        if abs(fc) <= tol:
            return cand
        if fc < 0:
            lo, flo = cand, fc
        else:
            hi, fhi = cand, fc
        x, fx = (lo, flo) if abs(flo) < abs(fhi) else (hi, fhi)
    best, fbest = (lo, flo) if abs(flo) < abs(fhi) else (hi, fhi)
    if abs(fbest) <= tol:
        return best
    raise NumericFailure(
        f"root not resolved to tolerance {tol:g}; best residual {fbest:g} at {best!r}"
    )


def _check_domain(grid: Grid, x):
    x = np.asarray(x, dtype=float)
    lo, hi = -DOMAIN_SLACK, grid.length + DOMAIN_SLACK * max(1.0, grid.length)
    if np.any(~np.isfinite(x)) or np.any(x < lo) or np.any(x > hi):
        raise OutOfDomain(f"evaluation point outside [0, {grid.length}]")
    return x


def eval_linear(f: ScalarField, x):
    """Piecewise-linear interpolation of ``f`` at ``x`` (scalar or array)."""
    xa = _check_domain(f.grid, x)
    out = np.interp(xa, f.grid.nodes, f.values)
    return float(out) if np.ndim(out) == 0 else out


def slope(f: ScalarField, x):
    """Derivative of the piecewise-linear field; right-sided at interior nodes."""
    xa = _check_domain(f.grid, x)
    h = f.grid.spacing
    idx = np.clip(np.floor(xa / h).astype(int), 0, f.grid.intervals - 1)
    out = (f.values[idx + 1] - f.values[idx]) / h
    return float(out) if np.ndim(out) == 0 else out


def invert_monotone_field(f: ScalarField, target):
    """Preimage of ``target`` under a strictly increasing piecewise-linear field."""
    v = f.values
    if np.any(np.diff(v) <= 0):
        raise NotMonotone("field values are not strictly increasing")
    t = np.asarray(target, dtype=float)
    slack = DOMAIN_SLACK * max(1.0, abs(v[0]), abs(v[-1]))
    if np.any(~np.isfinite(t)) or np.any(t < v[0] - slack) or np.any(t > v[-1] + slack):
        raise OutOfRange(f"target outside field range [{v[0]}, {v[-1]}]")
    out = np.interp(t, v, f.grid.nodes)
    return float(out) if np.ndim(out) == 0 else out


def observed_order(errors, spacings) -> float:
    """Least-squares slope of ``log(error)`` against ``log(spacing)``."""
    e = np.asarray(errors, dtype=float)
    h = np.asarray(spacings, dtype=float)
    if e.shape != h.shape or e.ndim != 1 or e.size < 2:
        raise InvalidArgument("need at least two matching errors and spacings")
    if np.any(~(e > 0)) or np.any(~(h > 0)):
        raise InvalidArgument("errors and spacings must be positive")
    if np.any(np.diff(h) >= 0):
        raise InvalidArgument("spacings must be strictly decreasing")
    return float(np.polyfit(np.log(h), np.log(e), 1)[0])
