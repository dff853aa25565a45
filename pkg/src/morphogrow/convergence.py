"""Grid and time-step refinement studies against a fine reference run."""

from __future__ import annotations

import csv
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence

from .numerics import eval_linear, observed_order
from .sim import run

SPACE_LEVELS = (64, 128, 256, 512)
SPACE_REFERENCE = 1024
TIME_LEVELS = (25, 50, 100, 200)
TIME_REFERENCE = 400
ERROR_FLOOR = 1e-12
QUANTITIES = ("S", "G_mid", "N_mid")


@dataclass(frozen=True)
class OrderRow:
    quantity: str
    h_or_dt: float
    error: float
    observed_order: Optional[float] = None
    last_in_group: bool = False


def final_quantities(scenario, M: Optional[int] = None, n_steps: Optional[int] = None) -> Dict[str, float]:
    """Final stress and mid-rod growth and nutrient values of one run."""
    problem = scenario.build(M=M, n_steps=n_steps)
    final = run(problem, snapshots=False).final
    mid = 0.5 * problem.G0.grid.length
    return {
        "S": final.S,
        "G_mid": float(eval_linear(final.G, mid)),
        "N_mid": float(eval_linear(final.N, mid)),
    }


def _job(args):
    scenario, M, n_steps = args
    return final_quantities(scenario, M, n_steps)


def convergence_study(
    scenario,
    mode: str,
    levels: Optional[Sequence[int]] = None,
    reference: Optional[int] = None,
    jobs: int = 1,
) -> List[OrderRow]:
    """Errors of each quantity against the reference and their observed order.

    ``mode="space"`` refines the grid at the scenario's step count;
    ``mode="time"`` refines the step count at the scenario's grid.  Points
    with errors below ``ERROR_FLOOR`` are excluded from the fit; with fewer
    than two points left the order is not applicable (``None``).
    """
    if mode == "space":
        levels = tuple(levels or SPACE_LEVELS)
        reference = reference or SPACE_REFERENCE
        tasks = [(scenario, m, None) for m in (*levels, reference)]
        spacing = [scenario.L0 / m for m in levels]
    elif mode == "time":
        levels = tuple(levels or TIME_LEVELS)
        reference = reference or TIME_REFERENCE
        tasks = [(scenario, None, n) for n in (*levels, reference)]
        spacing = [scenario.T / n for n in levels]
    else:
        raise ValueError(f"mode must be 'space' or 'time', got {mode!r}")

    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_job, tasks))
    else:
        results = [_job(t) for t in tasks]
    ref = results[-1]

    rows: List[OrderRow] = []
    for q in QUANTITIES:
        errors = [abs(r[q] - ref[q]) for r in results[:-1]]
        keep = [(h, e) for h, e in zip(spacing, errors) if e >= ERROR_FLOOR]
        order = observed_order([e for _, e in keep], [h for h, _ in keep]) if len(keep) >= 2 else None
        for i, (h, e) in enumerate(zip(spacing, errors)):
            last = i == len(errors) - 1
            rows.append(OrderRow(q, h, e, order if last else None, last))
    return rows


def order_of(rows: Sequence[OrderRow], quantity: str) -> Optional[float]:
    for r in rows:
        if r.quantity == quantity and r.last_in_group:
            return r.observed_order
    raise KeyError(quantity)


def write_orders_csv(rows: Sequence[OrderRow], path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["quantity", "h_or_dt", "error", "observed_order"])
        for r in rows:
            if not r.last_in_group:
                order = ""
            elif r.observed_order is None:
                order = "n/a"
            else:
                order = f"{r.observed_order:.17g}"
            w.writerow([r.quantity, f"{r.h_or_dt:.17g}", f"{r.error:.17g}", order])
