"""The two hard-coded refutation instances, their mark tables, the frozen
choice scripts, and the verdict logic that certifies each refutation.

A refutation is CONFIRMED when the scripted algorithm run produces exactly
the documented wrong outcome while the brute-force oracle proves the outcome
wrong.
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources
from typing import Callable, Optional

from . import trace as tr
from .algorithms import (
    CYCLE_DETECTED,
    DEFINED,
    FAIL,
    SUCCESS,
    UNDEFINED,
    RunOutcome,
    run_algorithm_d,
    run_algorithm_u,
)
from .core import (
    FALSE,
    FREE,
    TRUE,
    ConceptStore,
    Formula,
    Mark,
    Understanding,
)
from .oracle import (
    OracleReport,
    assignment_satisfies,
    brute_force_sat,
    enumerate_defined,
)
from .policies import ChoiceScript, ScriptedPolicy, TrailPolicy, ScriptExhaustedError

REFUTATION_NAMES = (
    "algorithm_d_wrong_success",
    "algorithm_d_nontermination",
    "algorithm_u_wrong_fail",
)

# Variable numbering for the 8-clause instance: a=1 b=2 c=3 d=4 e=5 x=6 y=7.
D_VARS = {"a": 1, "b": 2, "c": 3, "d": 4, "e": 5, "x": 6, "y": 7}


def instance_d() -> Formula:
    """The 8-clause instance over {a,b,c,d,e,x,y} from the Algorithm D refutation."""
    a, b, c, d, e, x, y = (D_VARS[k] for k in "abcdexy")
    return Formula(
        [
            (a, b, c),
            (a, -b, c),
            (a, b, -c),
            (a, -b, -c),
            (-x, y, -a),
            (-x, -y, -a),
            (d, y, e),
            (-d, -y, -e),
        ]
    )


def initial_table_d(formula: Optional[Formula] = None) -> Understanding:
    """The documented starting understanding: x false, a true, y true."""
    f = formula or instance_d()
    a, b, c, d, e, x, y = (D_VARS[k] for k in "abcdexy")
    return Understanding.from_dict(
        f,
        {
            a: TRUE, -a: FALSE, b: FREE, -b: FREE, c: FREE, -c: FREE,
            d: FALSE, -d: TRUE, e: FREE, -e: FREE, x: FALSE, -x: TRUE,
            y: TRUE, -y: FALSE,
        },
    )


def second_table_d(formula: Optional[Formula] = None) -> Understanding:
    """The documented witness for the recursive call freeing the negation of y."""
    f = formula or instance_d()
    a, b, c, d, e, x, y = (D_VARS[k] for k in "abcdexy")
    return Understanding.from_dict(
        f,
        {
            a: TRUE, -a: FALSE, b: FREE, -b: FREE, c: FREE, -c: FREE,
            d: FALSE, -d: TRUE, e: TRUE, -e: FALSE, x: FALSE, -x: TRUE,
            y: FREE, -y: FREE,
        },
    )


def third_table_d(formula: Optional[Formula] = None) -> Understanding:
    """The documented witness offered for the G subcall (negation of y true)."""
    f = formula or instance_d()
    a, b, c, d, e, x, y = (D_VARS[k] for k in "abcdexy")
    return Understanding.from_dict(
        f,
        {
            a: TRUE, -a: FALSE, b: FREE, -b: FREE, c: FREE, -c: FREE,
            d: TRUE, -d: FALSE, e: FREE, -e: FREE, x: FALSE, -x: TRUE,
            y: FALSE, -y: TRUE,
        },
    )


# Variable numbering for the 13-clause instance, in order of first appearance:
# x=1 a=2 b=3 y=4 c=5 d=6 z=7 e=8 f=9.
U_VARS = {"x": 1, "a": 2, "b": 3, "y": 4, "c": 5, "d": 6, "z": 7, "e": 8, "f": 9}
U_HEADS = (1, 4, 7)  # x, y, z


def instance_u() -> Formula:
    """The 13-clause satisfiable instance the adversarial ordering defeats."""
    x, a, b, y, c, d, z, e, f = (U_VARS[k] for k in "xabycdzef")
    return Formula(
        [
            (x, a, b), (x, -a, b), (-x, a, -b), (-x, -a, -b),
            (y, c, d), (y, -c, d), (-y, c, -d), (-y, -c, -d),
            (z, e, f), (z, -e, f), (-z, e, -f), (-z, -e, -f),
            (x, y, z),
        ]
    )


def head_block(head_index: int = 0) -> Formula:
    """One 4-clause block as a standalone formula (head var 1, tail vars 2, 3)."""
    if head_index not in (0, 1, 2):
        raise ValueError("head_index must be 0, 1 or 2")
    return Formula([(1, 2, 3), (1, -2, 3), (-1, 2, -3), (-1, -2, -3)])


def paper_witness_u() -> dict[int, bool]:
    """The documented satisfying assignment of the 13-clause instance."""
    w = {"x": True, "a": True, "b": False, "y": True, "c": True, "d": False,
         "z": True, "e": True, "f": False}
    return {U_VARS[k]: v for k, v in w.items()}


def d_refutation_script() -> ChoiceScript:
    """Pins the four multi-option literal picks of the wrong-success run.

    They coincide with FIFO under the deterministic sibling order, matching
    the documented walkthrough: first pass picks the negation of y out of
    {¬y, ¬a}, second pass picks y out of {y, ¬a}; the two picks inside the
    recursive calls take the first pending sibling. All other choice points
    fall back to FIFO.
    """
    return ChoiceScript(
        entries=[("D.literal", 0)] * 4,
        on_exhausted="fifo",
    )


def _data_text(name: str) -> str:
    return resources.files("marksat").joinpath("data").joinpath(name).read_text()


def adversarial_script_u() -> ChoiceScript:
    """The frozen adversarial ordering for the 13-clause instance."""
    return ChoiceScript.from_json(_data_text("adversarial_u_script.json"))


@dataclass
class Refutation:
    name: str
    formula: Formula
    script: ChoiceScript
    expected_status: str
    oracle_description: str
    initial_understanding: Optional[Understanding] = None


@dataclass
class RefutationResult:
    name: str
    confirmed: bool
    run_outcome: RunOutcome
    oracle_summary: str
    trace: tr.TraceLog
    detail: str = ""


def _oracle_no_free_x(formula: Formula) -> tuple[bool, str]:
    x = D_VARS["x"]
    report = enumerate_defined(formula, constraint=(x, FREE), want_witness=False)
    ok = report.defined_count == 0
    return ok, (
        f"enumerate_defined(instance_d, x free) = {report.defined_count} "
        f"(refutation needs 0)"
    )


def run_refutation(
    name: str,
    budget: Optional[int] = None,
    trace: Optional[tr.TraceLog] = None,
) -> RefutationResult:
    """Execute one named refutation: the scripted run plus its oracle query."""
    if trace is None:
        trace = tr.TraceLog()
    if name == "algorithm_d_wrong_success":
        formula = instance_d()
        u0 = initial_table_d(formula)
        store = ConceptStore.full(formula)
        policy = ScriptedPolicy(d_refutation_script())
        outcome = run_algorithm_d(
            u0, store, D_VARS["x"], policy=policy, budget=budget or 10**6, trace=trace
        )
        oracle_ok, summary = _oracle_no_free_x(formula)
        confirmed = outcome.status == SUCCESS and oracle_ok
        detail = ""
        if outcome.status == SUCCESS:
            assert outcome.understanding is not None
            # wrong success: x is still false, not freed, and the entry marks
            # the protected-set contract cared about are intact (H was empty).
            detail = f"returned success with x marked {outcome.understanding.get(D_VARS['x']).token}"
        return RefutationResult(name, confirmed, outcome, summary, trace, detail)

    if name == "algorithm_d_nontermination":
        formula = instance_d()
        u0 = initial_table_d(formula)
        store = ConceptStore.full(formula)
        policy = ScriptedPolicy(d_refutation_script())
        outcome = run_algorithm_d(
            u0,
            store,
            D_VARS["x"],
            policy=policy,
            budget=budget or 10**4,
            trace=trace,
            allow_reconsider=True,
        )
        oracle_ok, summary = _oracle_no_free_x(formula)
        confirmed = outcome.status == CYCLE_DETECTED and oracle_ok
        return RefutationResult(name, confirmed, outcome, summary, trace)

    if name == "algorithm_u_wrong_fail":
        formula = instance_u()
        policy = ScriptedPolicy(adversarial_script_u())
        outcome = run_algorithm_u(formula, policy=policy, budget=budget or 10**6, trace=trace)
        sat = brute_force_sat(formula)
        witness_ok = assignment_satisfies(formula, paper_witness_u())
        summary = (
            f"brute_force_sat: satisfiable={sat.satisfiable} "
            f"({sat.model_count} models); documented witness satisfies all "
            f"{len(formula)} clauses: {witness_ok}"
        )
        confirmed = outcome.status == FAIL and bool(sat.satisfiable) and witness_ok
        detail = ""
        if outcome.understanding is not None:
            marks = [outcome.understanding.get(h).token for h in U_HEADS]
            detail = f"head marks x,y,z = {marks}"
        return RefutationResult(name, confirmed, outcome, summary, trace, detail)

    raise ValueError(f"unknown refutation {name!r} (expected one of {REFUTATION_NAMES})")


class SearchExhaustedError(RuntimeError):
    """The bounded ordering search found no adversarial run; indicates a
    transcription bug rather than an expected outcome."""


def _consulted_choices(log: tr.TraceLog) -> list[tuple[str, int, int]]:
    out = []
    for e in log:
        if e.kind == tr.CHOICE and not e.payload.get("forced"):
            out.append((e.payload["label"], e.payload["options"], e.payload["chosen"]))
    return out


def _search_runs(
    formula: Formula,
    accepts: Callable[[RunOutcome], bool],
    max_runs: int,
    budget: int = 10**5,
) -> Optional[list[tuple[str, int]]]:
    """Depth-first search over the consulted-choice tree of algorithm_u runs.

    Enumerates choice vectors lexicographically (FIFO first); returns the
    (label, index) sequence of the first accepted run.
    """
    prefix: list[int] = []
    for _ in range(max_runs):
        log = tr.TraceLog()
        try:
            outcome = run_algorithm_u(
                formula, policy=TrailPolicy(prefix), budget=budget, trace=log
            )
        except ScriptExhaustedError:
            outcome = RunOutcome("trail_error")
        recorded = _consulted_choices(log)
        if accepts(outcome):
            return [(label, chosen) for label, _, chosen in recorded]
        i = len(recorded) - 1
        while i >= 0:
            label, options, chosen = recorded[i]
            if chosen + 1 < options:
                prefix = [c for (_, _, c) in recorded[:i]] + [chosen + 1]
                break
            i -= 1
        else:
            return None
    raise SearchExhaustedError(f"search budget of {max_runs} runs exhausted")


def derive_block_pattern(max_runs: int = 200_000) -> list[tuple[str, int]]:
    """Find an adoption ordering of one 4-clause block that completes with the
    head literal marked false (the state the wrong-fail run needs)."""
    block = head_block()

    def accepts(outcome: RunOutcome) -> bool:
        if outcome.understanding is None:
            return False
        completed = outcome.status == DEFINED or (
            outcome.status == UNDEFINED and outcome.detail == "fixpoint_not_defined"
        )
        return completed and outcome.understanding.get(1) is FALSE

    pattern = _search_runs(block, accepts, max_runs)
    if pattern is None:
        raise SearchExhaustedError(
            "no block ordering reaches a completed state with the head false"
        )
    return pattern


def derive_adversarial_script_u(max_runs: int = 200_000) -> ChoiceScript:
    """Search for the ordering under which the 13-clause run returns FAIL.

    The block pattern is found on the standalone 4-clause block and replicated
    across the three variable-disjoint blocks (unadopted block clause ids
    always sort first, so the recorded indices transfer verbatim); the final
    clause's handling resolves FIFO. The assembled script is verified
    end-to-end before being returned.
    """
    pattern = derive_block_pattern(max_runs)
    script = ChoiceScript(entries=pattern * 3, on_exhausted="fifo")
    formula = instance_u()
    log = tr.TraceLog()
    outcome = run_algorithm_u(
        formula, policy=ScriptedPolicy(script), budget=10**6, trace=log
    )
    if outcome.status != FAIL:
        raise SearchExhaustedError(
            f"replicated block pattern did not produce FAIL (got {outcome.status})"
        )
    assert outcome.understanding is not None
    if any(outcome.understanding.get(h) is not FALSE for h in U_HEADS):
        raise SearchExhaustedError("FAIL reached but the three heads are not all false")
    return script
