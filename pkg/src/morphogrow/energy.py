"""Stored energy densities ``W(X, p) = mu(X) * w(p)`` and the inverse stress map.

``mu`` is a positive stiffness field on the reference interval and ``w`` a
strictly convex shape function with ``w(1) = w'(1) = 0`` that blows up as
``p -> 0+``.  The inverse stress map ``pi0(X, S)`` returns the unique
stretch ``p`` with ``dW/dp(X, p) = S``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List

import numpy as np

from .errors import InvalidArgument, InvalidCoefficient, InvalidStretch, NumericFailure
from .numerics import ScalarField, eval_linear, slope

PI0_TOL = 1e-12


class EnergyModel:
    """Separable energy ``mu(X) * w(p)``; subclasses provide ``w`` and its derivatives."""

    kind = "generic"

    def __init__(self, mu: ScalarField):
        if not mu.min() > 0:
            raise InvalidCoefficient(
                f"stiffness must be strictly positive, minimum is {mu.min()}"
            )
        self.mu = mu

    def __repr__(self):
        return f"{type(self).__name__}(mu=[{self.mu.min():g}, {self.mu.max():g}])"

    @property
    def grid(self):
        return self.mu.grid

    @property
    def mu_min(self) -> float:
        return self.mu.min()

    # shape function and its p-derivatives, vectorized over p > 0
    def w(self, p):
        raise NotImplementedError

    def dw(self, p):
        raise NotImplementedError

    def d2w(self, p):
        raise NotImplementedError

    @staticmethod
    def _stretch(p):
        p = np.asarray(p, dtype=float)
        if np.any(~(p > 0)):
            raise InvalidStretch("stretch must be strictly positive")
        return p

    def W(self, X, p):
        p = self._stretch(p)
        return eval_linear(self.mu, X) * self.w(p)

    def dW_dp(self, X, p):
        p = self._stretch(p)
        return eval_linear(self.mu, X) * self.dw(p)

    def d2W_dp2(self, X, p):
        p = self._stretch(p)
        return eval_linear(self.mu, X) * self.d2w(p)

    def d2W_dXdp(self, X, p):
        p = self._stretch(p)
        return slope(self.mu, X) * self.dw(p)

    def pi0(self, X, S):
        """Unique ``p > 0`` with ``dW_dp(X, p) = S`` (vectorized Newton in ``log p``)."""
        mu = np.asarray(eval_linear(self.mu, X), dtype=float)
        S = np.asarray(S, dtype=float)
        mu, S = np.broadcast_arrays(mu, S)
        target = S / mu
        stol = np.maximum(PI0_TOL, 4 * np.finfo(float).eps * np.abs(S)) / mu

        def h(q):
            return self.dw(np.exp(q)) - target

        lo = np.full(target.shape, -1.0)
        hi = np.full(target.shape, 1.0)
        width = 1.0
        for _ in range(61):
            need_lo = h(lo) > 0
            need_hi = h(hi) < 0
            if not (need_lo.any() or need_hi.any()):
                break
            lo = np.where(need_lo, lo - width, lo)
            hi = np.where(need_hi, hi + width, hi)
            width *= 2.0
        else:
            raise NumericFailure("pi0: could not bracket the stretch")

        q = np.clip(np.log(np.clip(1.0 + target, 0.5, 2.0)), lo, hi)
        for _ in range(200):
            p = np.exp(q)
            r = self.dw(p) - target
            done = np.abs(r) <= stol
            if done.all():
                out = np.exp(q)
                return float(out) if out.ndim == 0 else out
            lo = np.where(r < 0, q, lo)
            hi = np.where(r > 0, q, hi)
            step = q - r / (self.d2w(p) * p)
            inside = (step > lo) & (step < hi)
            q = np.where(done, q, np.where(inside, step, 0.5 * (lo + hi)))
        raise NumericFailure("pi0: Newton iteration did not converge")


class LogQuadraticEnergy(EnergyModel):
    """``W(X, p) = mu(X) (p^2 - 1 - 2 ln p)`` with closed-form ``pi0``."""

    kind = "log_quadratic"

    def w(self, p):
        return p * p - 1.0 - 2.0 * np.log(p)

    def dw(self, p):
        return 2.0 * (p - 1.0 / p)

    def d2w(self, p):
        return 2.0 * (1.0 + 1.0 / (p * p))

    def pi0(self, X, S):
        mu = np.asarray(eval_linear(self.mu, X), dtype=float)
        s = np.asarray(S, dtype=float) / (4.0 * mu)
        root = np.hypot(s, 1.0)
        # positive root of p^2 - 2 s p - 1, written without cancellation
        with np.errstate(divide="ignore"):
            out = np.where(s >= 0, s + root, 1.0 / (root - s))
        return float(out) if out.ndim == 0 else out


class QuarticLogEnergy(EnergyModel):
    """``W(X, p) = mu(X) ((p^4 - 1)/4 - ln p)``; stiffer in tension, no closed-form ``pi0``."""

    kind = "quartic_log"

    def w(self, p):
        return 0.25 * (p**4 - 1.0) - np.log(p)

    def dw(self, p):
        return p**3 - 1.0 / p

    def d2w(self, p):
        return 3.0 * p * p + 1.0 / (p * p)


ENERGY_KINDS = {
    LogQuadraticEnergy.kind: LogQuadraticEnergy,
    QuarticLogEnergy.kind: QuarticLogEnergy,
}


def make_energy(kind: str, mu: ScalarField) -> EnergyModel:
    try:
        cls = ENERGY_KINDS[kind]
    except KeyError:
        raise InvalidArgument(f"unknown energy kind {kind!r}") from None
    return cls(mu)


def make_log_quadratic(mu: ScalarField) -> LogQuadraticEnergy:
    return LogQuadraticEnergy(mu)


def make_quartic_log(mu: ScalarField) -> QuarticLogEnergy:
    return QuarticLogEnergy(mu)


def dW_dp(model: EnergyModel, X, p):
    return model.dW_dp(X, p)


def pi0(model: EnergyModel, X, S):
    return model.pi0(X, S)


def dpi0_dS(model: EnergyModel, X, S):
    """``1 / W_pp(X, pi0(X, S))``."""
    return 1.0 / model.d2W_dp2(X, model.pi0(X, S))


def dpi0_dX(model: EnergyModel, X, S):
    """Implicit derivative ``-W_Xp / W_pp`` at ``p = pi0(X, S)``."""
    p = model.pi0(X, S)
    return -model.d2W_dXdp(X, p) / model.d2W_dp2(X, p)


@dataclass(frozen=True)
class StressBracket:
    sigma0: float
    sigma1: float
    p0: float
    p1: float


def stress_bracket(model: EnergyModel, p_lo: float, p_hi: float) -> StressBracket:
    """Stress range reached by stretches in ``[p_lo, p_hi]`` and the stretch
    bounds valid over that whole range.

    ``sigma0``/``sigma1`` are the extreme nodal stresses at ``p_lo``/``p_hi``.
    When ``mu`` varies in ``X`` a softer node is stretched beyond
    ``[p_lo, p_hi]`` by these stresses, so ``p0``/``p1`` are taken as the
    extreme values of ``pi0`` over the stress range; they reduce to
    ``p_lo``/``p_hi`` for homogeneous stiffness.
    """
    if not (0 < p_lo <= p_hi):
        raise InvalidArgument("need 0 < p_lo <= p_hi")
    X = model.grid.nodes
    sigma0 = float(np.min(model.dW_dp(X, p_lo)))
    sigma1 = float(np.max(model.dW_dp(X, p_hi)))
    p0 = min(p_lo, float(np.min(model.pi0(X, sigma0))))
    p1 = max(p_hi, float(np.max(model.pi0(X, sigma1))))
    return StressBracket(sigma0, sigma1, p0, p1)


@dataclass(frozen=True)
class EnergyCheck:
    name: str
    passed: bool
    worst: float
    detail: str = ""


@dataclass
class EnergyReport:
    kind: str
    probes: List[float]
    checks: List[EnergyCheck] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def __getitem__(self, name) -> EnergyCheck:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_dict(self):
        return {
            "kind": self.kind,
            "probes": list(self.probes),
            "passed": self.passed,
            "checks": {
                c.name: {"pass": c.passed, "worst_value": c.worst, "detail": c.detail}
                for c in self.checks
            },
        }

    def format(self) -> str:
        lines = [f"energy {self.kind}: {'PASS' if self.passed else 'FAIL'}"]
        for c in self.checks:
            mark = "ok  " if c.passed else "FAIL"
            lines.append(f"  [{mark}] {c.name:<22} worst={c.worst:.6g}  {c.detail}")
        return "\n".join(lines)


def validate_energy(model: EnergyModel, p_probes) -> EnergyReport:
    """Probe-based check of the structural energy assumptions at every node.

    Checks: ``W(X, 1) = 0``; ``W >= 0``; ``W_pp > 0``; ``W_p`` strictly
    increasing across the sorted probes; ``W`` strictly increasing as the
    probes below 1 decrease toward 0.
    """
    probes = np.sort(np.asarray(p_probes, dtype=float))
    if probes.size == 0 or np.any(~(probes > 0)):
        raise InvalidArgument("probes must be positive")
    X = model.grid.nodes[:, None]
    P = probes[None, :]
    report = EnergyReport(model.kind, probes.tolist())

    w1 = np.abs(model.W(model.grid.nodes, 1.0))
    report.checks.append(
        EnergyCheck("W(X,1)=0", bool(np.all(w1 <= 1e-12)), float(w1.max()))
    )
    Wv = model.W(X, P)
    report.checks.append(
        EnergyCheck("W>=0", bool(np.all(Wv >= 0)), float(Wv.min()))
    )
    Wpp = model.d2W_dp2(X, P)
    report.checks.append(
        EnergyCheck("W_pp>0", bool(np.all(Wpp > 0)), float(Wpp.min()))
    )
    if probes.size >= 2:
        dWp = np.diff(model.dW_dp(X, P), axis=1)
        report.checks.append(
            EnergyCheck("W_p increasing", bool(np.all(dWp > 0)), float(dWp.min()))
        )
    else:
        report.checks.append(
            EnergyCheck("W_p increasing", False, float("nan"), "needs two probes")
        )
    small = probes[probes < 1.0]
    if small.size >= 2:
        # W must grow as p decreases toward 0
        growth = -np.diff(model.W(X, small[None, :]), axis=1)
        report.checks.append(
            EnergyCheck("blow-up as p->0", bool(np.all(growth > 0)), float(growth.min()))
        )
    else:
        report.checks.append(
            EnergyCheck("blow-up as p->0", False, float("nan"), "needs two probes below 1")
        )
    return report
