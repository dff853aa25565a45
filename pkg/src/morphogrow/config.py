"""Scenario documents: parsing, validation and construction of a :class:`Problem`.

A scenario is one JSON object::

    {"geometry": {"L0": 1, "l0": 1},
     "time": {"T": 1, "n_steps": 100, "snapshot_every": 10},
     "grid": {"M": 128},
     "energy": {"kind": "log_quadratic", "mu": <coef>},
     "nutrient": {"D0": <coef>, "beta0": <coef>, "nL": 1, "nR": 1},
     "law": {"gamma": <coef>, "mu0": 0.5, "mu1": 1.5, "S_ref": 1,
             "eta0": 0, "eta1": 1, "N_ref": 1},
     "numerics": {"root_tol": 1e-12},
     "initial": {"G": <coef>}}

Every key is optional.  A coefficient ``<coef>`` is a bare number or one of
``{"kind": "constant", "value": v}``, ``{"kind": "affine", "a": a, "b": b}``
(``a + b X``) or ``{"kind": "table", "xs": [...], "values": [...]}``
(piecewise linear, ``xs`` strictly increasing and covering ``[0, L0]``).
"""

from __future__ import annotations

import copy
import json
import math
from dataclasses import dataclass
from numbers import Real
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from .energy import ENERGY_KINDS, make_energy
from .errors import ConfigError
from .growth import ExampleLawParams, GrowthContext
from .numerics import Grid, ScalarField
from .sim import Problem

DEFAULTS: Dict[str, Dict[str, Any]] = {
    "geometry": {"L0": 1.0, "l0": 1.0},
    "time": {"T": 1.0, "n_steps": 100, "snapshot_every": 10},
    "grid": {"M": 128},
    "energy": {"kind": "log_quadratic", "mu": 1.0},
    "nutrient": {"D0": 1.0, "beta0": 1.0, "nL": 1.0, "nR": 1.0},
    "law": {
        "gamma": 1.0,
        "mu0": 0.5,
        "mu1": 1.5,
        "S_ref": 1.0,
        "eta0": 0.0,
        "eta1": 1.0,
        "N_ref": 1.0,
    },
    "numerics": {"root_tol": 1e-12},
    "initial": {"G": 1.0},
}

COEFFICIENT_KEYS = {
    ("energy", "mu"),
    ("nutrient", "D0"),
    ("nutrient", "beta0"),
    ("law", "gamma"),
    ("initial", "G"),
}


@dataclass(frozen=True)
class CoefficientSpec:
    kind: str
    value: float = 0.0
    a: float = 0.0
    b: float = 0.0
    xs: Tuple[float, ...] = ()
    values: Tuple[float, ...] = ()

    def __call__(self, X):
        X = np.asarray(X, dtype=float)
        if self.kind == "constant":
            return np.full(X.shape, self.value)
        if self.kind == "affine":
            return self.a + self.b * X
        return np.interp(X, self.xs, self.values)

    def evaluate(self, grid: Grid) -> ScalarField:
        return ScalarField(grid, self(grid.nodes))

    def breakpoints(self, L0: float) -> np.ndarray:
        """Points where the extreme values over ``[0, L0]`` are attained."""
        pts = [0.0, L0]
        if self.kind == "table":
            pts += [x for x in self.xs if 0.0 <= x <= L0]
        return np.array(pts)

    def to_dict(self):
        if self.kind == "constant":
            return {"kind": "constant", "value": self.value}
        if self.kind == "affine":
            return {"kind": "affine", "a": self.a, "b": self.b}
        return {"kind": "table", "xs": list(self.xs), "values": list(self.values)}


@dataclass(frozen=True)
class Scenario:
    L0: float
    l0: float
    T: float
    n_steps: int
    snapshot_every: int
    M: int
    energy_kind: str
    mu: CoefficientSpec
    D0: CoefficientSpec
    beta0: CoefficientSpec
    nL: float
    nR: float
    gamma: CoefficientSpec
    mu0: float
    mu1: float
    S_ref: float
    eta0: float
    eta1: float
    N_ref: float
    root_tol: float
    G_initial: CoefficientSpec

    def to_dict(self) -> Dict[str, Any]:
        return {
            "geometry": {"L0": self.L0, "l0": self.l0},
            "time": {"T": self.T, "n_steps": self.n_steps, "snapshot_every": self.snapshot_every},
            "grid": {"M": self.M},
            "energy": {"kind": self.energy_kind, "mu": self.mu.to_dict()},
            "nutrient": {
                "D0": self.D0.to_dict(),
                "beta0": self.beta0.to_dict(),
                "nL": self.nL,
                "nR": self.nR,
            },
            "law": {
                "gamma": self.gamma.to_dict(),
                "mu0": self.mu0,
                "mu1": self.mu1,
                "S_ref": self.S_ref,
                "eta0": self.eta0,
                "eta1": self.eta1,
                "N_ref": self.N_ref,
            },
            "numerics": {"root_tol": self.root_tol},
            "initial": {"G": self.G_initial.to_dict()},
        }

    def grid(self, M: Optional[int] = None) -> Grid:
        return Grid(self.L0, self.M if M is None else M)

    def build(self, M: Optional[int] = None, n_steps: Optional[int] = None) -> Problem:
        """Discretize on ``M`` intervals with ``n_steps`` time steps (defaults from the scenario)."""
        grid = self.grid(M)
        gamma = self.gamma.evaluate(grid)
        gvals = self.gamma(self.gamma.breakpoints(self.L0))
        law = ExampleLawParams(
            gamma=gamma,
            mu0=self.mu0,
            mu1=self.mu1,
            S_ref=self.S_ref,
            eta0=self.eta0,
            eta1=self.eta1,
            N_ref=self.N_ref,
            gamma0=float(min(gvals.min(), gamma.min())),
            gamma1=float(max(gvals.max(), gamma.max())),
        )
        ctx = GrowthContext(
            energy=make_energy(self.energy_kind, self.mu.evaluate(grid)),
            law=law,
            D0=self.D0.evaluate(grid),
            beta0=self.beta0.evaluate(grid),
            nL=self.nL,
            nR=self.nR,
            l0=self.l0,
            root_tol=self.root_tol,
        )
        return Problem(
            ctx=ctx,
            G0=self.G_initial.evaluate(grid),
            T=self.T,
            n_steps=self.n_steps if n_steps is None else n_steps,
            snapshot_every=self.snapshot_every,
        )

    def coefficient_bounds(self) -> Dict[str, float]:
        """``D_min, D_max, beta_min, beta_max`` over ``[0, L0]``."""
        out = {}
        for name, spec in (("D", self.D0), ("beta", self.beta0)):
            X = np.concatenate([spec.breakpoints(self.L0), self.grid().nodes])
            vals = spec(X)
            out[f"{name}_min"] = float(vals.min())
            out[f"{name}_max"] = float(vals.max())
        return out


class _Validator:
    def __init__(self):
        self.problems: List[Tuple[str, str]] = []

    def fail(self, path, msg):
        self.problems.append((path, msg))

    def number(self, doc, section, key, *, positive=False, nonneg=False, integer=False, minimum=None):
        path = f"{section}.{key}"
        v = doc[section][key]
        if isinstance(v, bool) or not isinstance(v, Real):
            self.fail(path, f"expected a number, got {v!r}")
            return None
        if integer:
            if float(v) != int(v):
                self.fail(path, f"expected an integer, got {v!r}")
                return None
            v = int(v)
        else:
            v = float(v)
        if not math.isfinite(v):
            self.fail(path, "must be finite")
            return None
        if positive and not v > 0:
            self.fail(path, f"must be positive, got {v}")
        if nonneg and not v >= 0:
            self.fail(path, f"must be nonnegative, got {v}")
        if minimum is not None and v < minimum:
            self.fail(path, f"must be at least {minimum}, got {v}")
        return v

    def coefficient(self, obj, path, L0, positive=True) -> Optional[CoefficientSpec]:
        if isinstance(obj, Real) and not isinstance(obj, bool):
            obj = {"kind": "constant", "value": obj}
        if not isinstance(obj, dict):
            self.fail(path, f"expected a number or coefficient object, got {obj!r}")
            return None
        kind = obj.get("kind")
        allowed = {"constant": {"value"}, "affine": {"a", "b"}, "table": {"xs", "values"}}
        if kind not in allowed:
            self.fail(path, f"kind must be one of {sorted(allowed)}, got {kind!r}")
            return None
        extra = set(obj) - allowed[kind] - {"kind"}
        missing = allowed[kind] - set(obj)
        for k in sorted(extra):
            self.fail(f"{path}.{k}", "unknown key")
        for k in sorted(missing):
            self.fail(f"{path}.{k}", "missing")
        if extra or missing:
            return None

        def num(x):
            return isinstance(x, Real) and not isinstance(x, bool) and math.isfinite(float(x))

        if kind == "constant":
            if not num(obj["value"]):
                self.fail(f"{path}.value", "expected a finite number")
                return None
            spec = CoefficientSpec("constant", value=float(obj["value"]))
        elif kind == "affine":
            if not (num(obj["a"]) and num(obj["b"])):
                self.fail(path, "affine coefficients a, b must be finite numbers")
                return None
            spec = CoefficientSpec("affine", a=float(obj["a"]), b=float(obj["b"]))
        else:
            xs, vs = obj["xs"], obj["values"]
            if not (isinstance(xs, list) and isinstance(vs, list) and all(map(num, xs + vs))):
                self.fail(path, "table xs and values must be lists of finite numbers")
                return None
            if len(xs) < 2 or len(xs) != len(vs):
                self.fail(path, "table needs at least two points and matching lengths")
                return None
            if any(b <= a for a, b in zip(xs, xs[1:])):
                self.fail(f"{path}.xs", "table xs must be strictly increasing")
                return None
            if L0 is not None and (xs[0] > 0 or xs[-1] < L0):
                self.fail(f"{path}.xs", f"table must span [0, {L0}]")
                return None
            spec = CoefficientSpec(
                "table", xs=tuple(map(float, xs)), values=tuple(map(float, vs))
            )
        if positive and L0 is not None and not np.all(spec(spec.breakpoints(L0)) > 0):
            self.fail(path, "coefficient must be strictly positive on [0, L0]")
            return None
        return spec


def _merge_defaults(doc: Dict[str, Any], v: _Validator) -> Dict[str, Dict[str, Any]]:
    merged = copy.deepcopy(DEFAULTS)
    for section, body in doc.items():
        if section not in DEFAULTS:
            v.fail(section, "unknown section")
            continue
        if not isinstance(body, dict):
            v.fail(section, "expected an object")
            continue
        for key, val in body.items():
            if key not in DEFAULTS[section]:
                v.fail(f"{section}.{key}", "unknown key")
                continue
            merged[section][key] = val
    return merged


def scenario_from_dict(doc: Dict[str, Any]) -> Scenario:
    """Validate a scenario document, reporting every problem with its field path."""
    v = _Validator()
    if not isinstance(doc, dict):
        raise ConfigError([("<root>", "scenario must be a JSON object")])
    d = _merge_defaults(doc, v)

    L0 = v.number(d, "geometry", "L0", positive=True)
    l0 = v.number(d, "geometry", "l0", positive=True)
    T = v.number(d, "time", "T", positive=True)
    n_steps = v.number(d, "time", "n_steps", integer=True, minimum=1)
    every = v.number(d, "time", "snapshot_every", integer=True, minimum=1)
    M = v.number(d, "grid", "M", integer=True, minimum=8)
    kind = d["energy"]["kind"]
    if kind not in ENERGY_KINDS:
        v.fail("energy.kind", f"must be one of {sorted(ENERGY_KINDS)}, got {kind!r}")
    nL = v.number(d, "nutrient", "nL", nonneg=True)
    nR = v.number(d, "nutrient", "nR", nonneg=True)
    mu0 = v.number(d, "law", "mu0")
    mu1 = v.number(d, "law", "mu1")
    S_ref = v.number(d, "law", "S_ref", positive=True)
    eta0 = v.number(d, "law", "eta0", nonneg=True)
    eta1 = v.number(d, "law", "eta1", nonneg=True)
    N_ref = v.number(d, "law", "N_ref", positive=True)
    root_tol = v.number(d, "numerics", "root_tol", positive=True)
    if mu0 is not None and mu1 is not None and mu0 > mu1:
        v.fail("law.mu1", "must be >= law.mu0")
    if eta0 is not None and eta1 is not None and eta0 > eta1:
        v.fail("law.eta1", "must be >= law.eta0")

    L0_ok = L0 if L0 is not None and L0 > 0 else None
    coefs = {
        (sec, key): v.coefficient(d[sec][key], f"{sec}.{key}", L0_ok)
        for sec, key in sorted(COEFFICIENT_KEYS)
    }
    if v.problems:
        raise ConfigError(v.problems)
    return Scenario(
        L0=L0,
        l0=l0,
        T=T,
        n_steps=n_steps,
        snapshot_every=every,
        M=M,
        energy_kind=kind,
        mu=coefs["energy", "mu"],
        D0=coefs["nutrient", "D0"],
        beta0=coefs["nutrient", "beta0"],
        nL=nL,
        nR=nR,
        gamma=coefs["law", "gamma"],
        mu0=mu0,
        mu1=mu1,
        S_ref=S_ref,
        eta0=eta0,
        eta1=eta1,
        N_ref=N_ref,
        root_tol=root_tol,
        G_initial=coefs["initial", "G"],
    )


def parse_scenario(path) -> Scenario:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError([("<file>", f"cannot read {path}: {exc.strerror or exc}")]) from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError([("<file>", f"parse error: {exc}")]) from exc
    return scenario_from_dict(doc)
