"""Pseudo-Boolean constraints and their CNF encodings.

Two encoders are provided.  The weighted sequential counter keeps one
register bit per (term, partial sum) pair and is only practical when the
bound is small.  The adder encoding sums the weighted literals into a binary
number with full adders and compares it against the bound; its size grows
with the bit width of the coefficients instead of their magnitude, which is
what cent-scale budgets need.  ``encode_pb`` picks between them automatically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .cnf import CnfBuilder, CnfFormula, Lit, neg

LE = "<="
GE = ">="
SEQUENTIAL = "sequential"
ADDER = "adder"
AUTO = "auto"
SEQUENTIAL_LIMIT = 256  # max terms * bound for the register encoding


@dataclass(frozen=True)
class PBConstraint:
    terms: tuple[tuple[int, int], ...]
    relation: str
    bound: int

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple((int(c), int(l)) for c, l in self.terms))
        if self.relation not in (LE, GE):
            raise ValueError(f"relation must be {LE!r} or {GE!r}")
        for c, l in self.terms:
            if c == 0:
                raise ValueError("zero coefficient")
            if l == 0:
                raise ValueError("literal 0 is reserved")

    @property
    def max_var(self) -> int:
        return max((abs(l) for _, l in self.terms), default=0)

    def lhs(self, model) -> int:
        return sum(c for c, l in self.terms if model[abs(l)] == (l > 0))

    def holds(self, model) -> bool:
        s = self.lhs(model)
        return s <= self.bound if self.relation == LE else s >= self.bound


def normalize_pb(terms: Iterable[tuple[int, Lit]], relation: str, bound: int):
    """Rewrite as ``sum w_j * l_j <= K`` with every ``w_j`` in 1..K.

    Returns ``True`` (always satisfied), ``False`` (never satisfied) or a
    tuple ``(weights, lits, K, forced_false)`` where ``forced_false`` lists
    literals whose coefficient alone exceeds the bound.
    """
    sign = 1 if relation == LE else -1
    k = sign * bound
    merged: dict[int, int] = {}
    for c, l in terms:
        c *= sign
        if l is True:
            k -= c
            continue
        if l is False or c == 0:
            continue
        if c < 0:
            # c*l == c + |c|*(not l)
            k -= c
            c, l = -c, -l
        if -l in merged:
            # w*l + v*(not l) == v + (w - v)*l
            v = merged.pop(-l)
            k -= min(c, v)
            if c > v:
                merged[l] = merged.get(l, 0) + c - v
            elif v > c:
                merged[-l] = v - c
            continue
        merged[l] = merged.get(l, 0) + c
    if k < 0:
        return False
    if sum(merged.values()) <= k:
        return True
    forced = [l for l, w in merged.items() if w > k]
    kept = [(w, l) for l, w in merged.items() if w <= k]
    if not kept:
        return [], [], k, forced
    g = 0
    for w, _ in kept:
        g = math.gcd(g, w)
    return [w // g for w, _ in kept], [l for _, l in kept], k // g, forced


def _sequential(b: CnfBuilder, ws: Sequence[int], ls: Sequence[Lit], k: int) -> None:
    # s[i][j-1] <=> "terms 0..i contribute at least j" (only the -> direction is needed)
    n = len(ws)
    prev = None
    for i, (w, l) in enumerate(zip(ws, ls)):
        cur = b.new_vars(k) if i < n - 1 else None
        if cur is not None:
            for j in range(w):
                b.add([neg(l), cur[j]])
        if prev is not None:
            if cur is not None:
                for j in range(k):
                    b.add([-prev[j], cur[j]])
                for j in range(k - w):
                    b.add([neg(l), -prev[j], cur[j + w]])
            b.add([neg(l), -prev[k - w]])
        prev = cur


def sum_bits(b: CnfBuilder, ws: Sequence[int], ls: Sequence[Lit]) -> list[Lit]:
    """Little-endian bits of ``sum w_j * l_j``, built by column compression.

    Every set bit of every weight drops its literal into that bit's column;
    full adders then turn three bits of a column into one sum bit in place
    plus one carry into the next column until each column holds one bit.
    """
    columns: list[list[Lit]] = []
    for w, l in zip(ws, ls):
        j = 0
        while w:
            if w & 1:
                while len(columns) <= j:
                    columns.append([])
                columns[j].append(l)
            w >>= 1
            j += 1
    out: list[Lit] = []
    j = 0
    while j < len(columns):
        col = columns[j]
        while len(col) > 1:
            x, y = col.pop(), col.pop()
            z = col.pop() if col else False
            s_, carry = b.full_add(x, y, z)
            col.insert(0, s_)
            if carry is not False:
                if j + 1 == len(columns):
                    columns.append([])
                columns[j + 1].append(carry)
        out.append(col[0] if col else False)
        j += 1
    return out


def le_const(b: CnfBuilder, bits: Sequence[Lit], k: int) -> Lit:
    """Literal equivalent to ``value(bits) <= k`` (bits little-endian)."""
    if k < 0:
        return False
    res: Lit = True
    for i, x in enumerate(bits):
        if (k >> i) & 1:
            res = b.or_(neg(x), res)
        else:
            res = b.and_(neg(x), res)
    if k >> len(bits):
        return True
    return res


def _adder(b: CnfBuilder, ws: Sequence[int], ls: Sequence[Lit], k: int) -> None:
    b.assert_lit(le_const(b, sum_bits(b, ws, ls), k))


def encode_terms(b: CnfBuilder, terms: Iterable[tuple[int, Lit]], relation: str, bound: int,
                 method: str = AUTO) -> None:
    """Add clauses enforcing a PB constraint over builder literals."""
    norm = normalize_pb(terms, relation, bound)
    if norm is True:
        return
    if norm is False:
        b.add([])
        return
    ws, ls, k, forced = norm
    for l in forced:
        b.assert_lit(neg(l))
    if not ws:
        return
    if method == AUTO:
        method = SEQUENTIAL if len(ws) * k <= SEQUENTIAL_LIMIT else ADDER
    if method == SEQUENTIAL:
        _sequential(b, ws, ls, k)
    elif method == ADDER:
        _adder(b, ws, ls, k)
    else:
        raise ValueError(f"unknown PB encoding {method!r}")


def encode_pb(c: PBConstraint, num_vars: int | None = None, method: str = AUTO) -> CnfFormula:
    """Standalone CNF for one constraint; variables above ``num_vars`` are auxiliary."""
    b = CnfBuilder(max(num_vars or 0, c.max_var))
    encode_terms(b, c.terms, c.relation, c.bound, method)
    return b.formula()
