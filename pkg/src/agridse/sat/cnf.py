"""CNF formulas, DIMACS text I/O and a small Tseitin gate builder.

Builder literals are non-zero ints or the Python constants ``True`` and
``False``; gates fold constants at encoding time so trivially decided
sub-circuits never reach the clause database.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Union

Lit = Union[int, bool]


@dataclass
class CnfFormula:
    num_vars: int
    clauses: list[list[int]] = field(default_factory=list)

    def __post_init__(self):
        n = self.num_vars
        for cl in self.clauses:
            if cl and (0 in cl or max(cl) > n or min(cl) < -n):
                bad = next(l for l in cl if l == 0 or abs(l) > n)
                raise ValueError(f"literal {bad} outside 1..{n}")

    @property
    def num_clauses(self) -> int:
        return len(self.clauses)

    def evaluate(self, model) -> bool:
        """True iff ``model`` (var -> bool) satisfies every clause."""
        return all(any(model[abs(l)] == (l > 0) for l in cl) for cl in self.clauses)


def to_dimacs(f: CnfFormula, comments: Iterable[str] = ()) -> str:
    lines = [f"c {c}" for c in comments]
    lines.append(f"p cnf {f.num_vars} {len(f.clauses)}")
    lines.extend(" ".join(map(str, cl + [0])) for cl in f.clauses)
    return "\n".join(lines) + "\n"


def export_dimacs(f: CnfFormula, path: str | os.PathLike, comments: Iterable[str] = ()) -> None:
    Path(path).write_text(to_dimacs(f, comments), encoding="ascii")


def parse_dimacs(text: str) -> CnfFormula:
    num_vars = num_clauses = None
    clauses: list[list[int]] = []
    current: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c") or line.startswith("%"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise ValueError(f"line {lineno}: bad problem line {line!r}")
            num_vars, num_clauses = int(parts[2]), int(parts[3])
            continue
        if num_vars is None:
            raise ValueError(f"line {lineno}: clause before problem line")
        for tok in line.split():
            lit = int(tok)
            if lit == 0:
                clauses.append(current)
                current = []
            else:
                current.append(lit)
    if current:
        clauses.append(current)
    if num_vars is None:
        raise ValueError("missing problem line")
    if len(clauses) != num_clauses:
        raise ValueError(f"header declares {num_clauses} clauses, body has {len(clauses)}")
    return CnfFormula(num_vars, clauses)


def read_dimacs(path: str | os.PathLike) -> CnfFormula:
    return parse_dimacs(Path(path).read_text(encoding="ascii"))


def neg(l: Lit) -> Lit:
    if isinstance(l, bool):
        return not l
    return -l


class CnfBuilder:
    def __init__(self, num_vars: int = 0):
        self.num_vars = num_vars
        self.clauses: list[list[int]] = []

    def new_var(self) -> int:
        self.num_vars += 1
        return self.num_vars

    def new_vars(self, n: int) -> list[int]:
        return [self.new_var() for _ in range(n)]

    def add(self, clause: Iterable[Lit]) -> None:
        out = []
        for l in clause:
            if l is True:
                return
            if l is False:
                continue
            if -l in out:
                return
            if l not in out:
                out.append(l)
        self.clauses.append(out)

    def assert_lit(self, l: Lit) -> None:
        self.add([l])

    def formula(self) -> CnfFormula:
        return CnfFormula(self.num_vars, [list(c) for c in self.clauses])

    # gates -----------------------------------------------------------------

    def and_(self, a: Lit, b: Lit) -> Lit:
        if a is False or b is False:
            return False
        if a is True:
            return b
        if b is True:
            return a
        if a == b:
            return a
        if a == -b:
            return False
        o = self.new_var()
        self.clauses += [[-o, a], [-o, b], [o, -a, -b]]
        return o

    def or_(self, a: Lit, b: Lit) -> Lit:
        return neg(self.and_(neg(a), neg(b)))

    def or_many(self, lits: Iterable[Lit]) -> Lit:
        ins = []
        for l in lits:
            if l is True:
                return True
            if l is False or l in ins:
                continue
            ins.append(l)
        if not ins:
            return False
        if len(ins) == 1:
            return ins[0]
        o = self.new_var()
        for l in ins:
            self.clauses.append([-l, o])
        self.clauses.append([-o] + ins)
        return o

    def xor(self, a: Lit, b: Lit) -> Lit:
        if a is False:
            return b
        if b is False:
            return a
        if a is True:
            return neg(b)
        if b is True:
            return neg(a)
        if a == b:
            return False
        if a == -b:
            return True
        o = self.new_var()
        self.clauses += [[-o, a, b], [-o, -a, -b], [o, -a, b], [o, a, -b]]
        return o

    def maj(self, a: Lit, b: Lit, c: Lit) -> Lit:
        for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
            if z is False:
                return self.and_(x, y)
            if z is True:
                return self.or_(x, y)
        if a == b or a == c:
            return a
        if b == c:
            return b
        o = self.new_var()
        self.clauses += [[-a, -b, o], [-a, -c, o], [-b, -c, o],
                         [a, b, -o], [a, c, -o], [b, c, -o]]
        return o

    def full_add(self, a: Lit, b: Lit, c: Lit) -> tuple[Lit, Lit]:
        """(sum, carry) of three bits."""
        return self.xor(self.xor(a, b), c), self.maj(a, b, c)
