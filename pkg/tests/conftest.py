import numpy as np
import pytest

from morphogrow.numerics import ScalarField


def smooth_random(rng, lo, hi, modes=3):
    """Random smooth function on [0, 1] with range inside [lo, hi]."""
    amp = rng.normal(size=modes) / np.arange(1, modes + 1)
    phase = rng.uniform(0, 2 * np.pi, modes)
    base = lambda x: sum(  # noqa: E731
        a * np.sin((k + 1) * np.pi * x + p) for k, (a, p) in enumerate(zip(amp, phase))
    )
    xs = np.linspace(0, 1, 401)
    b = base(xs)
    bmin, bmax = b.min(), b.max()
    u = rng.uniform(0, 1, 2)
    top = lo + (hi - lo) * max(u)
    bot = lo + (hi - lo) * min(u) * 0.5
    if top - bot < 1e-3:
        top = min(hi, bot + 0.1)
    return lambda x: bot + (top - bot) * (base(np.asarray(x) / 1.0) - bmin) / (bmax - bmin)


def growth_pair(rng, grid, lo=0.5, hi=2.0, max_delta=0.2):
    """Two growth fields with values in [lo, hi] at sup-distance at most max_delta."""
    G1 = ScalarField.from_function(grid, smooth_random(rng, lo, hi))
    d = smooth_random(rng, -1.0, 1.0)(grid.nodes)
    d = d / np.abs(d).max() * max_delta * rng.uniform(0.05, 1.0)
    G2 = ScalarField(grid, np.clip(G1.values + d, lo, hi))
    return G1, G2


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def scenario_doc(**sections):
    """Scenario document with the given sections merged over an empty one."""
    return {name: dict(body) for name, body in sections.items()}


STATIONARY = scenario_doc(nutrient={"nL": 0, "nR": 0}, law={"eta0": 0, "eta1": 1})
DEGENERATE = scenario_doc(law={"mu0": 1, "mu1": 1, "eta0": 1, "eta1": 1})
