"""
Refinement studies
==================

Observed orders in time and space against a fine reference solution.
RK4 should show order four in time; the finite-difference nutrient solve
should show order two in space.
"""

# %%
from pathlib import Path

from morphogrow import parse_scenario
from morphogrow.convergence import convergence_study

here = Path(__file__).parent / "scenarios"

# %%
for name in ("exponential.json", "scenario_a.json", "stationary.json"):
    rows = convergence_study(parse_scenario(here / name), "time")
    orders = {r.quantity: r.observed_order for r in rows if r.last_in_group}
    text = ", ".join(f"{q}={'n/a' if o is None else f'{o:.2f}'}" for q, o in orders.items())
    print(f"time  {name:24s} {text}")

# %%
# With zero growth the nutrient profile is the constant-coefficient one.
# The reference is only twice as fine as the finest level, which nudges
# the fitted slope of a pure h^2 error up to about 2.13.
rows = convergence_study(parse_scenario(here / "nutrient_constant.json"), "space")
for r in rows:
    if r.quantity == "N_mid":
        tail = "" if not r.last_in_group else f"   order {r.observed_order:.3f}"
        print(f"space N_mid  h={r.h_or_dt:.5f}  err={r.error:.3e}{tail}")
