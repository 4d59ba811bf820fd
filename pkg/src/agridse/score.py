"""Weighted scores of design pools and the per-method comparison report.

A design earns three goodness values in [0, 1]:

* cost: ``(B - c) / (B - c_min)``, where ``c_min`` is the cheapest design in
  the reference set; 0 when the design is over budget, 1 when the reference
  range is degenerate;
* coverage: ``min(1, coverage / S)``;
* payload: ``payload / payload_max`` over the reference set (0 when no
  reference design carries any payload).

The design score is the weighted sum with weights normalized to sum to 1,
and a pool scores the mean over its designs.  Reports use one reference
set, the union of every method's pool, so scores are comparable across rows.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from typing import Iterable, Sequence

from .catalog import cents_to_str
from .constraints import FleetDesign, Scenario, check_budget, check_coverage
from .errors import ScoreError
from .objective import ROC_DEFAULT, ObjectiveWeights

NOT_AVAILABLE = ("bayesian_optimization", "pg_dse")
ILP = "ilp"


@dataclass(frozen=True)
class ScoreReference:
    budget_cents: int
    farm_size_m2: int
    min_cost_cents: int
    max_payload_kg: float

    @classmethod
    def from_designs(cls, designs: Iterable[FleetDesign], scen: Scenario) -> "ScoreReference":
        designs = list(designs)
        if not designs:
            raise ScoreError("cannot build a score reference from no designs")
        return cls(scen.budget_cents, scen.farm_size_m2,
                   min(d.total_cost_cents for d in designs),
                   max(d.total_payload_kg for d in designs))


def subscores(design: FleetDesign, ref: ScoreReference) -> tuple[float, float, float]:
    cost = design.total_cost_cents
    if cost > ref.budget_cents:
        cost_g = 0.0
    else:
        span = ref.budget_cents - min(ref.min_cost_cents, ref.budget_cents)
        cost_g = 1.0 if span == 0 else min(1.0, (ref.budget_cents - cost) / span)
    cov_g = min(1.0, design.total_coverage_m2 / ref.farm_size_m2)
    pay_g = 0.0 if ref.max_payload_kg <= 0 else min(1.0, max(0.0, design.total_payload_kg / ref.max_payload_kg))
    return cost_g, cov_g, pay_g


def design_score(design: FleetDesign, ref: ScoreReference, weights: ObjectiveWeights = ROC_DEFAULT) -> float:
    a, b, g = (float(w) for w in weights.normalized())
    c, v, p = subscores(design, ref)
    return a * c + b * v + g * p


def weighted_score(pool: Sequence[FleetDesign], scen: Scenario, weights: ObjectiveWeights = ROC_DEFAULT,
                   reference: ScoreReference | None = None) -> float:
    """Mean design score of ``pool``; the reference defaults to the pool itself."""
    if not pool:
        raise ScoreError("score of an empty pool is undefined")
    ref = reference or ScoreReference.from_designs(pool, scen)
    return sum(design_score(d, ref, weights) for d in pool) / len(pool)


# ---------------------------------------------------------------------------
# reports

@dataclass(frozen=True)
class MethodPool:
    name: str
    designs: tuple[FleetDesign, ...]
    sat_valid: tuple[bool, ...]

    def __post_init__(self):
        if len(self.designs) != len(self.sat_valid):
            raise ValueError("one SAT verdict per design is required")


@dataclass(frozen=True)
class ScoreRow:
    method: str
    score: float | None          # None marks a method that was not run
    mean_cost_cents: float | None = None
    mean_coverage_m2: float | None = None
    mean_payload_kg: float | None = None
    total: int = 0
    valid: int = 0
    invalid: int = 0
    over_budget: int = 0
    short_coverage: int = 0


@dataclass(frozen=True)
class ScoreReport:
    rows: tuple[ScoreRow, ...]
    weights: ObjectiveWeights
    reference: ScoreReference

    COLUMNS = ("method", "score", "mean_cost", "mean_coverage_m2", "mean_payload_kg",
               "total", "valid", "invalid", "over_budget", "short_coverage")

    def row(self, method: str) -> ScoreRow:
        for r in self.rows:
            if r.method == method:
                return r
        raise KeyError(method)

    def records(self) -> list[list[str]]:
        out = []
        for r in self.rows:
            if r.score is None:
                out.append([r.method, "N/A"] + [""] * 3 + ["0"] * 5)
                continue
            out.append([r.method, f"{r.score:.4f}", f"{r.mean_cost_cents / 100:.2f}",
                        f"{r.mean_coverage_m2:.0f}", f"{r.mean_payload_kg:.4f}",
                        str(r.total), str(r.valid), str(r.invalid),
                        str(r.over_budget), str(r.short_coverage)])
        return out

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(self.COLUMNS)
        w.writerows(self.records())
        return buf.getvalue()

    def to_text(self) -> str:
        table = [list(self.COLUMNS)] + self.records()
        widths = [max(len(r[i]) for r in table) for i in range(len(self.COLUMNS))]
        lines = [f"weights (alpha, beta, gamma) = ({self.weights.label()})",
                 f"reference: budget {cents_to_str(self.reference.budget_cents)}, "
                 f"farm {self.reference.farm_size_m2} m2, "
                 f"cheapest {cents_to_str(self.reference.min_cost_cents)}, "
                 f"max payload {self.reference.max_payload_kg:.4f} kg"]
        for r in table:
            lines.append("  ".join(c.ljust(wd) if i == 0 else c.rjust(wd)
                                   for i, (c, wd) in enumerate(zip(r, widths))).rstrip())
        return "\n".join(lines) + "\n"


def render_report(pools: Sequence[MethodPool], scen: Scenario, weights: ObjectiveWeights = ROC_DEFAULT,
                  not_available: Sequence[str] = NOT_AVAILABLE) -> ScoreReport:
    """One row per method plus N/A rows; scored rows by score descending, ties by name."""
    names = [p.name for p in pools]
    if ILP not in names:
        raise ScoreError("a report needs the ilp row")
    if len(set(names)) != len(names):
        raise ScoreError("duplicate method names in report")
    everything = [d for p in pools for d in p.designs]
    ref = ScoreReference.from_designs(everything, scen)
    rows = []
    for p in pools:
        if not p.designs:
            rows.append(ScoreRow(p.name, 0.0, 0.0, 0.0, 0.0))
            continue
        n = len(p.designs)
        rows.append(ScoreRow(
            method=p.name,
            score=weighted_score(p.designs, scen, weights, ref),
            mean_cost_cents=sum(d.total_cost_cents for d in p.designs) / n,
            mean_coverage_m2=sum(d.total_coverage_m2 for d in p.designs) / n,
            mean_payload_kg=sum(d.total_payload_kg for d in p.designs) / n,
            total=n,
            valid=sum(p.sat_valid),
            invalid=n - sum(p.sat_valid),
            over_budget=sum(not check_budget(d, scen).passed for d in p.designs),
            short_coverage=sum(not check_coverage(d, scen).passed for d in p.designs),
        ))
    rows.sort(key=lambda r: (-r.score, r.method))
    rows += [ScoreRow(m, None) for m in sorted(not_available) if m not in names]
    return ScoreReport(tuple(rows), weights, ref)
