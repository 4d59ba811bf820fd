"""Command-line entry point.

Exit status is 0 on success (or a valid/feasible design), 1 when a design
is invalid or a scenario has no feasible fleet, and 2 for input errors.
"""

from __future__ import annotations

import argparse
import logging
import sys
import time
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from . import __version__
from .baselines import BASELINES, DEFAULT_EVALS, DISCRETE, GA, LENGLER, PORTFOLIO, RANDOM, SA, run_baseline
from .catalog import (
    CATALOG_ENV_VAR,
    ComponentCatalog,
    cents_to_str,
    default_catalog_path,
    load_catalog,
)
from .constraints import (
    FleetDesign,
    Scenario,
    check_budget,
    check_coverage,
    feasible,
    load_scenario,
)
from .errors import AgriDSEError, InfeasibleError, SchemaError, ValidationError
from .ilp import DEFAULT_POOL_LIMIT, enumerate_configurations, solve, weight_sweep
from .objective import LITERAL, OBJECTIVE_MODES, ROC_DEFAULT, Evaluator, ObjectiveWeights, unit_bounds
from .records import (
    EvaluationRecord,
    dumps_design_set,
    frontier_csv,
    load_design,
    timing_table,
    verification_table,
)
from .sat import export_dimacs
from .sat.verify import encode_design, verify
from .score import ILP, MethodPool, render_report

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_INPUT = 2

BASELINE_ORDER = (SA, GA, RANDOM, DISCRETE, LENGLER, PORTFOLIO)
OUTPUT_FILES = ("frontier.csv", "scores.txt", "scores.csv", "verification.txt", "timing.txt", "designs.json")

log = logging.getLogger("agridse")


class InputError(AgriDSEError):
    """Bad command-line input (unknown method, malformed weights, ...)."""


# ---------------------------------------------------------------------------
# argument helpers

def parse_weights(text: str) -> ObjectiveWeights:
    parts = text.split(",")
    if len(parts) != 3:
        raise InputError(f"--weights expects three comma-separated numbers, got {text!r}")
    try:
        ws = [Fraction(p.strip()) for p in parts]
    except (ValueError, ZeroDivisionError):
        raise InputError(f"--weights expects numbers, got {text!r}") from None
    try:
        return ObjectiveWeights(*ws)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def parse_methods(text: str | None) -> list[str]:
    """Method names in run order; ``ilp`` is always first, ``all`` expands every baseline."""
    names = [] if not text else [m.strip().lower() for m in text.split(",") if m.strip()]
    out = [ILP]
    for m in names:
        expanded = BASELINE_ORDER if m == "all" else (m,)
        for n in expanded:
            if n != ILP and n not in BASELINES:
                raise InputError(f"unknown method {n!r}; choose from ilp, all, {', '.join(BASELINE_ORDER)}")
            if n not in out:
                out.append(n)
    return out


def _catalog(path: str | None) -> ComponentCatalog:
    p = Path(path) if path else default_catalog_path()
    if not p.exists():
        raise FileNotFoundError(f"catalog file not found: {p}")
    return load_catalog(p)


def _scenario(name: str | None, catalog: ComponentCatalog) -> Scenario:
    if not name:
        raise InputError("a scenario is required (positional argument or --scenario)")
    try:
        return load_scenario(name, catalog)
    except FileNotFoundError:
        raise FileNotFoundError(f"scenario file not found: {name}") from None


# ---------------------------------------------------------------------------
# run

@dataclass
class MethodResult:
    name: str
    designs: list[FleetDesign]
    sat_valid: list[bool]
    weights: list[ObjectiveWeights]
    seconds: float


def run_ilp(configs, scen: Scenario, weights: ObjectiveWeights, mode: str, grid: int | None,
            pool: int) -> MethodResult:
    t0 = time.perf_counter()
    if grid:
        result = weight_sweep(configs, scen, grid_resolution=grid, pool_limit=1, mode=mode, verify=False)
    else:
        result = solve(configs, scen, weights, pool_limit=pool, mode=mode)
    designs = [e.design for e in result.entries]
    valid = [verify(d, scen).valid for d in designs]
    return MethodResult(ILP, designs, valid, [e.weights for e in result.entries], time.perf_counter() - t0)


def run_method(name: str, ev: Evaluator, seed: int, evals: int) -> MethodResult:
    t0 = time.perf_counter()
    run = run_baseline(name, ev, seed, evals)
    designs = [e.design for e in run.entries]
    valid = [bool(e.sat_valid) for e in run.entries]
    return MethodResult(name, designs, valid, [ev.weights] * len(designs), time.perf_counter() - t0)


def write_outputs(out: Path, results: Sequence[MethodResult], scen: Scenario, weights: ObjectiveWeights) -> dict:
    out.mkdir(parents=True, exist_ok=True)
    records = [EvaluationRecord.from_design(r.name, d, ok, w)
               for r in results for d, ok, w in zip(r.designs, r.sat_valid, r.weights)]
    pools = [MethodPool(r.name, tuple(r.designs), tuple(r.sat_valid)) for r in results]
    report = render_report(pools, scen, weights)
    texts = {
        "frontier.csv": frontier_csv(records),
        "scores.txt": report.to_text(),
        "scores.csv": report.to_csv(),
        "verification.txt": verification_table(
            [(r.name, sum(r.sat_valid), len(r.sat_valid) - sum(r.sat_valid)) for r in results]),
        "timing.txt": timing_table([(r.name, r.seconds) for r in results]),
        "designs.json": dumps_design_set({r.name: r.designs for r in results}),
    }
    for name in OUTPUT_FILES:
        (out / name).write_text(texts[name], encoding="utf-8")
    return texts


def cmd_run(args) -> int:
    catalog = _catalog(args.catalog)
    scen = _scenario(args.scenario_pos or args.scenario, catalog)
    weights = parse_weights(args.weights) if args.weights else ROC_DEFAULT
    methods = parse_methods(args.methods)
    if args.grid is not None and args.grid < 2:
        raise InputError("--grid needs at least 2 points per edge")
    configs = enumerate_configurations(catalog, scen)
    log.info("%d configurations for %s", len(configs), scen.name)

    results = [run_ilp(configs, scen, weights, args.objective, args.grid, args.pool)]
    ev = Evaluator(configs, scen, weights, args.objective)
    for m in methods[1:]:
        log.info("running %s", m)
        results.append(run_method(m, ev, args.seed, args.evals))

    out = Path(args.out)
    texts = write_outputs(out, results, scen, weights)
    sys.stdout.write(texts["scores.txt"])
    sys.stdout.write("\n" + texts["verification.txt"])
    print(f"\nwrote {', '.join(OUTPUT_FILES)} to {out}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify / explain

def cmd_verify(args) -> int:
    catalog = _catalog(args.catalog)
    scen = _scenario(args.scenario, catalog)
    design = load_design(args.design, catalog, scen)
    # a file may hold more units than the solver's search bound; widen to fit
    bounds = [max(ub, x) for ub, (_, x) in zip(unit_bounds([c for c, _ in design.lines], scen), design.lines)]
    if args.dimacs:
        export_dimacs(encode_design(design, scen, bounds), args.dimacs)
    verdict = verify(design, scen, bounds)
    print(f"design {design.design_id}: {design.total_units} units, total cost "
          f"{cents_to_str(design.total_cost_cents)} (budget {cents_to_str(scen.budget_cents)}), "
          f"coverage {design.total_coverage_m2} m2 (farm {scen.farm_size_m2} m2)")
    if verdict.valid:
        print("VALID: budget and coverage are satisfiable with the given unit counts")
        return EXIT_OK
    print(f"INVALID: failed {', '.join(verdict.failed_constraints)}")
    return EXIT_INVALID


def explain_lines(design: FleetDesign, scen: Scenario) -> list[str]:
    rows: list[tuple[str, str]] = []

    def item(label: str, cents: int):
        rows.append((label, cents_to_str(cents)))

    for n, (cfg, x) in enumerate(design.lines, start=1):
        rows.append((f"[{n}] {cfg.key}  x{x}", ""))
        item(f"  chassis {cfg.chassis.id}", cfg.chassis.cost_cents)
        item(f"  motors {cfg.motor_count} x {cfg.motor.id}", cfg.motor_count * cfg.motor.cost_cents)
        item(f"  battery {cfg.battery_count} x {cfg.battery.id}", cfg.battery_count * cfg.battery.cost_cents)
        if cfg.tire is not None:
            item(f"  tires {cfg.tire_count} x {cfg.tire.id}", cfg.tire_count * cfg.tire.cost_cents)
        item(f"  compute {cfg.compute.id}", cfg.compute.cost_cents)
        for s in cfg.sensors:
            item(f"  sensor {s.id}", s.cost_cents)
        if design.extra_cost_cents:
            item("  application parts", design.extra_cost_cents)
        unit = cfg.metrics.unit_cost_cents + design.extra_cost_cents
        item("  unit cost", unit)
        item(f"  line cost x{x}", unit * x)
        m = cfg.metrics
        rows.append((f"  payload {m.max_payload_kg:.2f} kg, runtime {m.runtime_hours:.4f} h, "
                     f"area {m.area_m2} m2 per unit (kappa {m.kappa:g})", ""))
    item(f"comm {scen.comm_cells} x {scen.comm.id}", design.comm_cost_cents)
    if scen.edge_server is not None or design.edge_cost_cents:
        name = scen.edge_server.id if scen.edge_server is not None else "edge server"
        item(f"edge {name}", design.edge_cost_cents)
    item("total cost", design.total_cost_cents)
    width = max(len(a) for a, b in rows if b) + 2
    return [f"{a:<{width}}{b:>12}" if b else a for a, b in rows]


def cmd_explain(args) -> int:
    catalog = _catalog(args.catalog)
    scen = _scenario(args.scenario, catalog)
    design = load_design(args.design, catalog, scen)
    print(f"design {design.design_id} under scenario {scen.name}")
    for line in explain_lines(design, scen):
        print(line)
    b, c = check_budget(design, scen), check_coverage(design, scen)
    print("constraints:")
    for chk, unit in ((b, "slack " + cents_to_str(abs(b.margin))), (c, f"surplus {abs(c.margin)} m2")):
        if chk.margin == 0:
            state = "binding"
        elif chk.passed:
            state = "ok"
        else:
            state = "VIOLATED"
            unit = unit.replace("slack", "overrun").replace("surplus", "shortfall")
        print(f"  {chk.rule:<9} {state:<9} {unit}  ({chk.detail})")
    verdict = feasible(design, scen)
    if verdict.feasible:
        print("rules: all satisfied")
        return EXIT_OK
    print("violated rules:")
    for d in verdict.details:
        print(f"  {d}")
    return EXIT_INVALID


# ---------------------------------------------------------------------------
# catalog check

def cmd_catalog_check(args) -> int:
    path = args.path or args.catalog
    catalog = _catalog(path)
    label = path or str(default_catalog_path())
    counts = [("chassis", catalog.chassis_options), ("motors", catalog.motor_options),
              ("batteries", catalog.battery_options), ("tires", catalog.tire_options),
              ("compute", catalog.compute_options), ("comm", catalog.comm_options),
              ("edge_servers", catalog.edge_servers), ("sensors", catalog.sensors),
              ("crops", catalog.crops), ("applications", catalog.applications)]
    print(f"catalog {label}: OK")
    for name, opts in counts:
        print(f"  {name:<13}{len(opts):>4}")
    if args.scenario:
        scen = _scenario(args.scenario, catalog)
        configs = enumerate_configurations(catalog, scen)
        print(f"  {len(configs)} feasible configurations for scenario {scen.name}")
    return EXIT_OK


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--catalog", help=f"catalog JSON (default: ${CATALOG_ENV_VAR} or the bundled catalog)")
    common.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")

    ap = argparse.ArgumentParser(prog="agridse", description="Fleet design space exploration for farm robots.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", parents=[common], help="optimize a scenario and write reports")
    run.add_argument("scenario_pos", nargs="?", metavar="SCENARIO",
                     help="scenario file or bundled name such as case_study_1")
    run.add_argument("--scenario", help="same as the positional argument")
    run.add_argument("--methods", "--optimizer", dest="methods", default="ilp",
                     help="comma-separated: ilp, sa, ga, random, discrete, lengler, portfolio, all")
    run.add_argument("--seed", type=int, default=0)
    run.add_argument("--weights", help="alpha,beta,gamma (default: rank order centroid 0.611,0.278,0.111)")
    run.add_argument("--grid", type=int, default=None,
                     help="sweep the weight simplex with N points per edge instead of one solve")
    run.add_argument("--objective", choices=OBJECTIVE_MODES, default=LITERAL)
    run.add_argument("--evals", type=int, default=DEFAULT_EVALS, help="evaluation budget per baseline")
    run.add_argument("--pool", type=int, default=DEFAULT_POOL_LIMIT, help="ILP pool size (single solve)")
    run.add_argument("--out", default="out", help="output directory")
    run.set_defaults(func=cmd_run)

    ver = sub.add_parser("verify", parents=[common], help="SAT-check a design file")
    ver.add_argument("design")
    ver.add_argument("--scenario", required=True)
    ver.add_argument("--dimacs", help="also write the CNF to this path")
    ver.set_defaults(func=cmd_verify)

    exp = sub.add_parser("explain", parents=[common], help="cost breakdown and constraint slack of a design")
    exp.add_argument("design")
    exp.add_argument("--scenario", required=True)
    exp.set_defaults(func=cmd_explain)

    cat = sub.add_parser("catalog", help="catalog utilities")
    cat_sub = cat.add_subparsers(dest="catalog_command", required=True)
    chk = cat_sub.add_parser("check", parents=[common], help="load and validate a catalog")
    chk.add_argument("path", nargs="?")
    chk.add_argument("--scenario", help="also count feasible configurations for this scenario")
    chk.set_defaults(func=cmd_catalog_check)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except InfeasibleError as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        for k, v in exc.diagnostics.items():
            print(f"  {k}: {v}", file=sys.stderr)
        return EXIT_INVALID
    except (SchemaError, ValidationError, InputError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except AgriDSEError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
