"""SAT-based verification of fleet designs against the budget and coverage constraints.

Each design line gets one boolean per unit slot up to its bound, ordered so
that slot ``k+1`` implies slot ``k``; unit clauses then pin the chosen count.
The unary counts are channelled into binary count bits, and the two linear
constraints over those bits are encoded as pseudo-Boolean constraints.  The
verdict comes from the DPLL solver alone; the integer checks in
:mod:`agridse.constraints` are an independent second oracle.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from ..constraints import BUDGET, COVERAGE, FleetDesign, Scenario
from ..errors import EncodingError
from ..objective import unit_bounds
from .cnf import CnfBuilder, CnfFormula
from .dpll import dpll_solve
from .pb import AUTO, GE, LE, encode_terms


@dataclass(frozen=True)
class Verdict:
    valid: bool
    witness: dict[int, bool] | None = field(default=None, compare=False, repr=False)
    failed_constraints: tuple[str, ...] = ()
    counts: tuple[int, ...] = ()

    @property
    def failed_constraint(self) -> str | None:
        return self.failed_constraints[0] if self.failed_constraints else None

    def __bool__(self) -> bool:
        return self.valid


@dataclass
class EncodedDesign:
    formula: CnfFormula
    slots: list[list[int]]  # per line, slot variables 1..bound


def _line_bounds(design: FleetDesign, scen: Scenario, bounds) -> list[int]:
    if bounds is None:
        return unit_bounds([cfg for cfg, _ in design.lines], scen)
    if isinstance(bounds, int):
        return [bounds] * len(design.lines)
    if isinstance(bounds, Mapping):
        return [int(bounds[cfg.key]) for cfg, _ in design.lines]
    return [int(b) for b in bounds]


def _encode(design: FleetDesign, scen: Scenario, bounds=None,
            parts: tuple[str, ...] = (BUDGET, COVERAGE), method: str = AUTO) -> EncodedDesign:
    ubs = _line_bounds(design, scen, bounds)
    b = CnfBuilder()
    slots: list[list[int]] = []
    cost_terms: list[tuple[int, object]] = []
    area_terms: list[tuple[int, object]] = []
    for (cfg, x), ub in zip(design.lines, ubs):
        if x > ub:
            raise EncodingError(f"{cfg.key}: {x} units exceed the declared bound {ub}")
        u = b.new_vars(ub)
        slots.append(u)
        for k in range(1, ub):
            b.add([-u[k], u[k - 1]])
        for k in range(ub):
            b.add([u[k] if k < x else -u[k]])
        # exactly-k indicators, then binary count bits
        exact = [b.and_(u[k], -u[k + 1] if k + 1 < ub else True) for k in range(ub)]
        unit_cost = cfg.metrics.unit_cost_cents + design.extra_cost_cents
        area = cfg.metrics.area_m2
        for t in range(ub.bit_length()):
            bit = b.or_many(exact[k] for k in range(ub) if ((k + 1) >> t) & 1)
            if unit_cost:
                cost_terms.append((unit_cost << t, bit))
            if area:
                area_terms.append((area << t, bit))
    if BUDGET in parts:
        fixed = design.edge_cost_cents + design.comm_cost_cents
        encode_terms(b, cost_terms, LE, scen.budget_cents - fixed, method)
    if COVERAGE in parts:
        encode_terms(b, area_terms, GE, scen.farm_size_m2, method)
    return EncodedDesign(b.formula(), slots)


def encode_design(design: FleetDesign, scen: Scenario, bounds=None, method: str = AUTO) -> CnfFormula:
    """CNF that is satisfiable iff the design meets the budget and coverage constraints."""
    return _encode(design, scen, bounds, method=method).formula


def verify(design: FleetDesign, scen: Scenario, bounds=None, method: str = AUTO) -> Verdict:
    """Solve the budget and coverage formulas separately.

    The slot literals are fixed by unit clauses, so the two halves share no
    free variables and the conjunction is satisfiable iff each half is.
    Solving them apart costs the same as one joint solve and names every
    violated constraint directly.
    """
    failed = []
    witness: dict[int, bool] = {}
    counts: tuple[int, ...] = ()
    for part in (BUDGET, COVERAGE):
        enc = _encode(design, scen, bounds, (part,), method)
        res = dpll_solve(enc.formula)
        if not res.satisfiable:
            failed.append(part)
        elif not witness:
            counts = tuple(sum(res.model[v] for v in u) for u in enc.slots)
            witness = {v: res.model[v] for u in enc.slots for v in u}
    if failed:
        return Verdict(False, None, tuple(failed))
    return Verdict(True, witness, (), counts)
