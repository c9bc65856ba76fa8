"""Exact brute-force ground truth at desk scale.

Two enumerations: assignment-level satisfiability over 2^n assignments and
exhaustive defined-understanding search over 3^(2n) mark maps. Both are
capped; the caps exist because the oracles are for correctness, not
performance.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from . import kernels
from .core import Formula, Mark, Understanding, lit_index

DEFAULT_SAT_CAP = 24
DEFAULT_DEFINED_CAP = 8


class CapExceededError(ValueError):
    """The instance is larger than the configured enumeration cap."""


@dataclass
class OracleReport:
    satisfiable: Optional[bool] = None
    witness: Optional[dict[int, bool]] = None
    model_count: Optional[int] = None
    defined_count: Optional[int] = None
    free_witness: Optional[Understanding] = None


def _sat_arrays(formula: Formula) -> tuple[list[int], list[int]]:
    cvars, cpols = [], []
    for clause in formula.clauses:
        for lit in clause.literals:
            cvars.append(abs(lit) - 1)
            cpols.append(1 if lit > 0 else 0)
    return cvars, cpols


def _concept_arrays(formula: Formula) -> tuple[list[int], list[int], list[int]]:
    foc, s1, s2 = [], [], []
    for clause in formula.clauses:
        for lit in clause.literals:
            sibs = [l for l in clause.literals if l != lit]
            foc.append(lit_index(lit))
            s1.append(lit_index(sibs[0]))
            s2.append(lit_index(sibs[1]))
    return foc, s1, s2


def _bits_to_assignment(bits: int, n_vars: int) -> dict[int, bool]:
    return {v: bool((bits >> (v - 1)) & 1) for v in range(1, n_vars + 1)}


def brute_force_sat(
    formula: Formula, cap: int = DEFAULT_SAT_CAP, want_witness: bool = True
) -> OracleReport:
    """Exact satisfiability by 2^n enumeration; witness when satisfiable."""
    if formula.num_vars > cap:
        raise CapExceededError(
            f"{formula.num_vars} variables exceed the {cap}-variable assignment cap"
        )
    cvars, cpols = _sat_arrays(formula)
    count, first, _, _ = kernels.count_sat(formula.num_vars, cvars, cpols)
    witness = None
    if count and want_witness:
        witness = _bits_to_assignment(first, formula.num_vars)
    return OracleReport(satisfiable=count > 0, witness=witness, model_count=count)


def forced_variables(formula: Formula, cap: int = DEFAULT_SAT_CAP) -> tuple[set[int], set[int]]:
    """Variables fixed across ALL satisfying assignments: (always true, always false).

    Both sets are empty when the formula is unsatisfiable.
    """
    if formula.num_vars > cap:
        raise CapExceededError(
            f"{formula.num_vars} variables exceed the {cap}-variable assignment cap"
        )
    cvars, cpols = _sat_arrays(formula)
    count, _, all_and, none_and = kernels.count_sat(formula.num_vars, cvars, cpols)
    if count == 0:
        return set(), set()
    always_true = {v for v in range(1, formula.num_vars + 1) if (all_and >> (v - 1)) & 1}
    always_false = {v for v in range(1, formula.num_vars + 1) if (none_and >> (v - 1)) & 1}
    return always_true, always_false


def assignment_satisfies(formula: Formula, assignment: dict[int, bool]) -> bool:
    """Independent re-check that a total assignment satisfies every clause."""
    for clause in formula.clauses:
        if not any(assignment[abs(l)] == (l > 0) for l in clause.literals):
            return False
    return True


def enumerate_defined(
    formula: Formula,
    constraint: Optional[tuple[int, Mark]] = None,
    cap: int = DEFAULT_DEFINED_CAP,
    want_witness: bool = True,
) -> OracleReport:
    """Count defined understandings over all 3^(2n) mark maps.

    ``constraint`` restricts the count to maps assigning the given literal the
    given mark. The witness is the first defined map in the fixed enumeration
    order (marks e < t < f per literal, last literal varying fastest).
    """
    if formula.num_vars > cap:
        raise CapExceededError(
            f"{formula.num_vars} variables exceed the {cap}-variable understanding cap"
        )
    foc, s1, s2 = _concept_arrays(formula)
    cslot, cmark = -1, -1
    if constraint is not None:
        lit, mark = constraint
        cslot, cmark = lit_index(lit), int(mark)
    count, witness_marks = kernels.count_defined(
        formula.num_vars, foc, s1, s2, cslot, cmark, want_witness
    )
    free_witness = None
    if witness_marks is not None:
        free_witness = Understanding(formula.num_vars, [int(x) for x in witness_marks])
    return OracleReport(defined_count=count, free_witness=free_witness)


def check_iff_claim(
    formula: Formula,
    sat_cap: int = DEFAULT_SAT_CAP,
    defined_cap: int = DEFAULT_DEFINED_CAP,
) -> bool:
    """Whether 'satisfiable iff some defined understanding exists' holds here."""
    sat = brute_force_sat(formula, cap=sat_cap, want_witness=False)
    defined = enumerate_defined(formula, cap=defined_cap, want_witness=False)
    return bool(sat.satisfiable) == (defined.defined_count > 0)
