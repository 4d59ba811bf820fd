"""Complete DPLL solver: unit propagation, pure-literal elimination, chronological backtracking.

Unit propagation uses two watched literals per clause.  Branching picks the
lowest-numbered unassigned variable that still occurs in an unsatisfied
clause and tries ``True`` first.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cnf import CnfFormula


@dataclass
class SatResult:
    satisfiable: bool
    model: dict[int, bool] | None = None
    decisions: int = 0
    propagations: int = 0

    def __bool__(self) -> bool:
        return self.satisfiable


def dpll_solve(f: CnfFormula, pure_literals: bool = True) -> SatResult:
    n = f.num_vars
    assign = [0] * (n + 1)             # 0 unassigned, 1 true, -1 false
    watches: list[list[int]] = [[] for _ in range(2 * n + 1)]  # index lit + n
    clauses: list[list[int]] = []
    units: list[int] = []
    for raw in f.clauses:
        seen = dict.fromkeys(raw)
        if any(-l in seen for l in seen):
            continue  # tautology
        cl = list(seen)
        if not cl:
            return SatResult(False)
        if len(cl) == 1:
            units.append(cl[0])
        else:
            watches[cl[0] + n].append(len(clauses))
            watches[cl[1] + n].append(len(clauses))
        clauses.append(cl)

    trail: list[int] = []
    marks: list[int] = []              # trail length at each decision
    decisions: list[tuple[int, bool]] = []  # (literal or 0 for a pure batch, exhausted?)
    stats = [0, 0]

    def val(l: int) -> int:
        v = assign[l] if l > 0 else -assign[-l]
        return v

    def enqueue(l: int) -> None:
        assign[abs(l)] = 1 if l > 0 else -1
        trail.append(l)

    for u in units:
        v = val(u)
        if v == -1:
            return SatResult(False)
        if v == 0:
            enqueue(u)

    def propagate(qhead: int) -> bool:
        """Propagate trail[qhead:]; return True on conflict."""
        while qhead < len(trail):
            p = trail[qhead]
            qhead += 1
            stats[1] += 1
            false_lit = -p
            wl = watches[false_lit + n]
            i = j = 0
            end = len(wl)
            while i < end:
                ci = wl[i]
                i += 1
                cl = clauses[ci]
                if cl[0] == false_lit:
                    cl[0], cl[1] = cl[1], cl[0]
                first = cl[0]
                if val(first) == 1:
                    wl[j] = ci
                    j += 1
                    continue
                for k in range(2, len(cl)):
                    if val(cl[k]) != -1:
                        cl[1], cl[k] = cl[k], cl[1]
                        watches[cl[1] + n].append(ci)
                        break
                else:
                    wl[j] = ci
                    j += 1
                    if val(first) == -1:
                        while i < end:
                            wl[j] = wl[i]
                            j += 1
                            i += 1
                        del wl[j:]
                        return True
                    enqueue(first)
            del wl[j:]
        return False

    def backtrack() -> int | None:
        """Undo to the most recent unexhausted decision and flip it; None when none is left."""
        while decisions:
            lit, exhausted = decisions.pop()
            mark = marks.pop()
            for l in trail[mark:]:
                assign[abs(l)] = 0
            del trail[mark:]
            if not exhausted:
                marks.append(mark)
                decisions.append((-lit, True))
                enqueue(-lit)
                return mark
        return None

    qhead = 0
    while True:
        if propagate(qhead):
            qhead = backtrack()
            if qhead is None:
                return SatResult(False, decisions=stats[0], propagations=stats[1])
            continue
        qhead = len(trail)

        if len(trail) == n:
            break
        # scan unsatisfied clauses for polarity occurrences of free variables
        pos = [False] * (n + 1)
        negs = [False] * (n + 1)
        open_clauses = 0
        for cl in clauses:
            sat = False
            for l in cl:
                if val(l) == 1:
                    sat = True
                    break
            if sat:
                continue
            open_clauses += 1
            for l in cl:
                if l > 0:
                    if assign[l] == 0:
                        pos[l] = True
                elif assign[-l] == 0:
                    negs[-l] = True
        if open_clauses == 0:
            break
        if pure_literals:
            pure = [v if pos[v] else -v for v in range(1, n + 1)
                    if assign[v] == 0 and pos[v] != negs[v]]
            if pure:
                marks.append(len(trail))
                decisions.append((0, True))
                for l in pure:
                    enqueue(l)
                continue
        var = next(v for v in range(1, n + 1) if assign[v] == 0 and (pos[v] or negs[v]))
        stats[0] += 1
        marks.append(len(trail))
        decisions.append((var, False))
        enqueue(var)

    model = {v: assign[v] == 1 for v in range(1, n + 1)}
    return SatResult(True, model, decisions=stats[0], propagations=stats[1])
