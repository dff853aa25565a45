"""Command-line entry point.

Exit codes: 0 success, 1 configuration or I/O error, 2 growth collapse,
3 failed energy-assumption validation.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

from .convergence import convergence_study, write_orders_csv
from .energy import validate_energy
from .errors import ConfigError, GrowthCollapse, MorphoError
from .config import parse_scenario
from .sim import Trajectory, run

EXIT_OK, EXIT_CONFIG, EXIT_COLLAPSE, EXIT_VALIDATION = 0, 1, 2, 3
DEFAULT_PROBES = (0.01, 0.1, 0.5, 1.0, 2.0, 10.0)


def _fmt(x) -> str:
    return f"{float(x):.17g}"


def _err(msg):
    print(f"morphogrow: {msg}", file=sys.stderr)


def write_outputs(traj: Trajectory, scenario, out: Path, status: str, message: str = "") -> None:
    l0 = scenario.l0
    with open(out / "series.csv", "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["t", "S", "yL0_residual", "G_min", "G_max", "N_min", "N_max"])
        for s in traj.snapshots:
            w.writerow(
                map(
                    _fmt,
                    (s.t, s.S, abs(s.y.values[-1] - l0), s.G.min(), s.G.max(), s.N.min(), s.N.max()),
                )
            )
    width = max(4, len(str(traj.problem.n_steps)))
    for s in traj.snapshots:
        with open(out / f"snapshot_{s.step:0{width}d}.csv", "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["X", "G", "g", "y", "Fe", "N"])
            for row in zip(s.G.nodes, s.G.values, s.g.values, s.y.values, s.Fe.values, s.N.values):
                w.writerow(map(_fmt, row))

    summary = {
        "status": status,
        "message": message,
        "scenario": scenario.to_dict(),
        "coefficient_bounds": scenario.coefficient_bounds(),
        "n_snapshots": len(traj.snapshots),
    }
    if traj.snapshots:
        f = traj.final
        summary["final"] = {"t": f.t, "S": f.S, "G_min": f.G.min(), "G_max": f.G.max()}
        summary["checks"] = {k: c.to_dict() for k, c in traj.checks().items()}
    (out / "summary.json").write_text(json.dumps(summary, indent=2) + "\n")


def cmd_run(scenario_path, out_dir) -> int:
    try:
        scenario = parse_scenario(scenario_path)
    except ConfigError as exc:
        _err(exc)
        return EXIT_CONFIG
    out = Path(out_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
        (out / ".write-test").touch()
        (out / ".write-test").unlink()
    except OSError as exc:
        _err(f"cannot write to output directory {out}: {exc}")
        return EXIT_CONFIG

    code, status, message = EXIT_OK, "ok", ""
    try:
        traj = run(scenario.build())
    except GrowthCollapse as exc:
        traj = exc.partial
        code, status, message = EXIT_COLLAPSE, "growth-collapse", str(exc)
        _err(message)
    except MorphoError as exc:
        _err(exc)
        return EXIT_CONFIG
    try:
        write_outputs(traj, scenario, out, status, message)
    except OSError as exc:
        _err(f"failed writing outputs: {exc}")
        return EXIT_CONFIG
    return code


def cmd_convergence(scenario_path, mode, out_dir=".", jobs=1) -> int:
    try:
        scenario = parse_scenario(scenario_path)
    except ConfigError as exc:
        _err(exc)
        return EXIT_CONFIG
    try:
        rows = convergence_study(scenario, mode, jobs=jobs)
    except GrowthCollapse as exc:
        _err(exc)
        return EXIT_COLLAPSE
    except MorphoError as exc:
        _err(exc)
        return EXIT_CONFIG
    try:
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        write_orders_csv(rows, out / "orders.csv")
    except OSError as exc:
        _err(f"failed writing orders.csv: {exc}")
        return EXIT_CONFIG
    for r in rows:
        if r.last_in_group:
            order = "n/a" if r.observed_order is None else f"{r.observed_order:.3f}"
            print(f"{mode} order of {r.quantity}: {order}")
    return EXIT_OK


def cmd_validate_energy(scenario_path, probes=DEFAULT_PROBES, json_path=None) -> int:
    try:
        scenario = parse_scenario(scenario_path)
        model = scenario.build().ctx.energy
        report = validate_energy(model, probes)
    except MorphoError as exc:
        _err(exc)
        return EXIT_CONFIG
    print(report.format())
    if json_path is not None:
        try:
            Path(json_path).write_text(json.dumps(report.to_dict(), indent=2) + "\n")
        except OSError as exc:
            _err(f"failed writing report: {exc}")
            return EXIT_CONFIG
    return EXIT_OK if report.passed else EXIT_VALIDATION


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="morphogrow", description="1D morphoelastic growth simulator")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="simulate a scenario and write CSV/JSON outputs")
    p.add_argument("scenario")
    p.add_argument("out_dir")

    p = sub.add_parser("convergence", help="grid or time-step refinement study")
    p.add_argument("scenario")
    p.add_argument("--mode", choices=("space", "time"), required=True)
    p.add_argument("--out", default=".", help="directory for orders.csv")
    p.add_argument("--jobs", type=int, default=1)

    p = sub.add_parser("validate-energy", help="check the stored-energy assumptions")
    p.add_argument("scenario")
    p.add_argument("--probes", type=float, nargs="+", default=list(DEFAULT_PROBES))
    p.add_argument("--json", dest="json_path", default=None)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "run":
        return cmd_run(args.scenario, args.out_dir)
    if args.command == "convergence":
        return cmd_convergence(args.scenario, args.mode, args.out, args.jobs)
    return cmd_validate_energy(args.scenario, args.probes, args.json_path)


if __name__ == "__main__":
    sys.exit(main())
