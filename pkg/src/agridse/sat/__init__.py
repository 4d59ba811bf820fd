"""Pseudo-Boolean to CNF encoding, a DPLL solver and design verification."""

from .cnf import CnfBuilder, CnfFormula, export_dimacs, parse_dimacs, read_dimacs, to_dimacs
from .dpll import SatResult, dpll_solve
from .pb import PBConstraint, encode_pb
from .verify import Verdict, encode_design, verify

__all__ = [
    "CnfBuilder", "CnfFormula", "PBConstraint", "SatResult", "Verdict",
    "dpll_solve", "encode_design", "encode_pb", "export_dimacs", "parse_dimacs",
    "read_dimacs", "to_dimacs", "verify",
]
