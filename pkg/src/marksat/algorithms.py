"""Faithful transcriptions of the three-valued mark procedures.

These functions reproduce the published pseudocode including its defects
(per-invocation "already considered" bookkeeping that lets wrong successes
through, worklists that never revisit untouched literals, and so on).
Nondeterminism is resolved through an injectable ChoicePolicy; every run
emits a replayable trace and is guarded by a step budget and a recursion
depth cap, since nontermination is provably possible.

Value semantics follow the pseudocode's assignment idiom: Algorithm D works
on a private copy of the understanding and hands it back on success;
Algorithm G is an observationally pure predicate (entry marks are restored
on both outcomes). The concept store is never copied: its membership only
grows inside Algorithm U's adoption loop.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional

from . import trace as tr
from .core import (
    FALSE,
    FREE,
    TRUE,
    Concept,
    ConceptStore,
    Formula,
    Mark,
    Understanding,
    any_cplus,
    concept_of,
    concept_type,
    ConceptType,
    has_negative,
    is_defined,
    lit_order_key,
    negate,
)
from .policies import ChoicePolicy, FifoPolicy

DEFAULT_BUDGET = 10**6
DEFAULT_MAX_DEPTH = 10**3

# compute() results
COMPUTE_OK = "ok"
COMPUTE_UNDEFINED = "undefined"

# RunOutcome statuses
DEFINED = "defined"
SUCCESS = "success"
FAIL = "fail"
UNDEFINED = "undefined"
BUDGET_EXHAUSTED = "budget_exhausted"
CYCLE_DETECTED = "cycle_detected"


class BudgetExhaustedError(Exception):
    pass


class UndefinedHitError(Exception):
    """An unguarded Compute call returned UNDEFINED; surfaces as run outcome."""


class CycleDetectedError(Exception):
    """Algorithm D revisited a (marks, considered set) state."""


@dataclass
class RunOutcome:
    """Result of one algorithm run.

    ``defined`` is only produced by algorithm_u and implies is_defined held at
    the final fixpoint; ``success`` is algorithm_d's normal return (which the
    counterexamples show need not mean anything).
    """

    status: str
    understanding: Optional[Understanding] = None
    store: Optional[ConceptStore] = None
    steps: int = 0
    detail: str = ""

    def __repr__(self) -> str:
        extra = f", detail={self.detail!r}" if self.detail else ""
        return f"RunOutcome({self.status!r}, steps={self.steps}{extra})"


class RunContext:
    """Per-run state: policy, trace sink, step budget, recursion depth."""

    def __init__(
        self,
        policy: Optional[ChoicePolicy] = None,
        trace: Optional[tr.TraceLog] = None,
        budget: int = DEFAULT_BUDGET,
        max_depth: int = DEFAULT_MAX_DEPTH,
    ):
        self.policy = policy or FifoPolicy()
        self.trace = trace
        self.budget = budget
        self.max_depth = max_depth
        self.steps = 0
        self.depth = 0

    def emit(self, kind: str, **payload) -> None:
        self.steps += 1
        if self.steps > self.budget:
            raise BudgetExhaustedError(f"step budget {self.budget} exceeded")
        if self.trace is not None:
            self.trace.append(tr.TraceEvent(self.steps, kind, payload))

    def choose(self, label: str, n_options: int) -> int:
        if n_options <= 0:
            raise ValueError("choice point with no options")
        if n_options == 1:
            self.emit(tr.CHOICE, label=label, options=1, chosen=0, forced=True)
            return 0
        idx = self.policy.choose(label, n_options)
        if not 0 <= idx < n_options:
            raise ValueError(f"policy chose {idx} of {n_options} at {label!r}")
        self.emit(tr.CHOICE, label=label, options=n_options, chosen=idx, forced=False)
        return idx


class Worklist:
    """Ordered pending-literal set (no duplicates); pop order is policy-driven."""

    def __init__(self, items: Iterable[int] = ()):
        self._items: list[int] = []
        self._members: set[int] = set()
        for lit in items:
            self.push(lit)

    def push(self, lit: int) -> None:
        if lit not in self._members:
            self._members.add(lit)
            self._items.append(lit)

    def pop_at(self, idx: int) -> int:
        lit = self._items.pop(idx)
        self._members.remove(lit)
        return lit

    def __len__(self) -> int:
        return len(self._items)

    def __bool__(self) -> bool:
        return bool(self._items)

    def as_list(self) -> list[int]:
        return list(self._items)


def set_mark_tracked(
    u: Understanding, store: ConceptStore, lit: int, mark: Mark, ctx: RunContext
) -> list[int]:
    """Assign a mark and report the literals whose concept-set type flipped.

    A set-type flip is a change of the "contains a C-plus member" bit of some
    focus literal's concept set; only concepts holding ``lit`` as a sibling
    can flip. Emits mark_set / type_changed events for actual changes.
    """
    old = u.get(lit)
    if old is mark:
        return []
    affected: list[int] = []
    seen: set[int] = set()
    for c in store.containing(lit):
        if c.focus not in seen:
            seen.add(c.focus)
            affected.append(c.focus)
    before = {f: any_cplus(store, f, u) for f in affected}
    u.set(lit, mark)
    ctx.emit(tr.MARK_SET, lit=lit, old=old.token, new=mark.token)
    flipped = [f for f in affected if any_cplus(store, f, u) != before[f]]
    flipped.sort(key=lit_order_key)
    for f in flipped:
        ctx.emit(tr.TYPE_CHANGED, lit=f, cplus=any_cplus(store, f, u))
    return flipped


def recalculate(u: Understanding, store: ConceptStore, lit: int) -> Optional[Mark]:
    """The transcribed Recalculate case analysis; pure, None means UNDEFINED.

    First-match order as published: an empty concept set yields e even when
    the negative set is nonempty (contrast `core.required_mark`).
    """
    empty = not store.focused_on(lit)
    plus = any_cplus(store, lit, u)
    neg = has_negative(lit, store, u)
    if empty or (not neg and not plus):
        return FREE
    if plus and not neg:
        return TRUE
    if neg and not plus:
        return FALSE
    return None


def compute(
    u: Understanding, store: ConceptStore, worklist: Worklist, ctx: RunContext
) -> str:
    """Propagate recalculated marks until no concept-set type change is pending.

    Mutates ``u`` in place. Returns COMPUTE_UNDEFINED as soon as any literal
    recalculates to the omitted case (partial mutations are the caller's
    problem, exactly as in the pseudocode).
    """
    while worklist:
        idx = ctx.choose("compute.pop", len(worklist))
        lit = worklist.pop_at(idx)
        mark = recalculate(u, store, lit)
        ctx.emit(tr.RECALCULATE, lit=lit, result="undefined" if mark is None else mark.token)
        if mark is None:
            ctx.emit(tr.UNDEFINED_HIT, lit=lit)
            return COMPUTE_UNDEFINED
        for f in set_mark_tracked(u, store, lit, mark, ctx):
            worklist.push(f)
    ctx.emit(tr.FIXPOINT_REACHED)
    return COMPUTE_OK


_G_PAIRS: tuple[tuple[Mark, Mark], ...] = (
    (FREE, FREE),
    (FREE, FALSE),
    (FALSE, FREE),
    (FALSE, FALSE),
)


def algorithm_g(u: Understanding, store: ConceptStore, lit: int, ctx: RunContext) -> bool:
    """Transcribed Algorithm G: True iff some sibling-assignment branch of some
    concept of ``lit`` reaches a non-UNDEFINED compute fixpoint after setting
    lit := t and its negation := f.

    The published line 6 ("set both to either e or f") is ill-defined; each
    concept branches over the four pairs (e,e), (e,f), (f,e), (f,f), policy-
    ordered with FIFO giving that fixed order, first non-UNDEFINED fixpoint
    winning. Failed branches are rolled back to the state right after the
    entry assignments; entry marks are restored before returning either way,
    so G is observationally a pure predicate.

    Faithfully kept anomaly: with no concepts focused on ``lit`` the loop body
    never runs and G returns False, even though lit := t would be harmless.
    """
    entry = u.snapshot()
    try:
        accum = Worklist()
        for f in set_mark_tracked(u, store, lit, TRUE, ctx):
            accum.push(f)
        for f in set_mark_tracked(u, store, negate(lit), FALSE, ctx):
            accum.push(f)
        base_marks = u.snapshot()
        base_accum = accum.as_list()
        for concept in list(store.focused_on(lit)):
            l1, l2 = concept.siblings
            remaining = list(_G_PAIRS)
            while remaining:
                pi = ctx.choose("G.pair", len(remaining))
                m1, m2 = remaining.pop(pi)
                u.restore(base_marks)
                branch = Worklist(base_accum)
                for f in set_mark_tracked(u, store, l1, m1, ctx):
                    branch.push(f)
                for f in set_mark_tracked(u, store, l2, m2, ctx):
                    branch.push(f)
                if compute(u, store, branch, ctx) == COMPUTE_OK:
                    return True
        return False
    finally:
        u.restore(entry)


def _state_key(u: Understanding, considered: set[tuple[int, int]]) -> tuple:
    return (u.snapshot(), tuple(sorted(considered)))


def algorithm_d(
    u: Understanding,
    store: ConceptStore,
    lit: int,
    protected: frozenset[int],
    ctx: RunContext,
    allow_reconsider: bool = False,
) -> tuple[str, Optional[Understanding]]:
    """Transcribed Algorithm D. Returns ("success", understanding) or ("fail", None).

    ``protected`` is the set H: literals excluded from the inner candidate set
    Q (and, per the published contract, not to be changed — which the
    transcription does not actually enforce).

    With ``allow_reconsider`` False, a concept re-entering the negative set
    after being considered once is never reprocessed; this reproduces the
    documented wrong success. With it True, concepts stay eligible and a
    repeat of the (marks, considered set) state at the loop head raises
    CycleDetectedError, converting the documented nontermination into a
    reportable outcome.

    Compute returning UNDEFINED here is unhandled in the published text;
    it propagates as UndefinedHitError to the run boundary.
    """
    if ctx.depth >= ctx.max_depth:
        raise BudgetExhaustedError(f"recursion depth {ctx.max_depth} exceeded")
    ctx.depth += 1
    ctx.emit(tr.RECURSE_ENTER, lit=lit, protected=sorted(protected), depth=ctx.depth)
    try:
        work = u.copy()
        considered: set[tuple[int, int]] = set()
        seen_states: set[tuple] = set()
        while True:
            if allow_reconsider:
                key = _state_key(work, considered)
                if key in seen_states:
                    ctx.emit(
                        tr.STATE_REVISIT,
                        lit=lit,
                        considered=[f"{c}/{f}" for c, f in sorted(considered)],
                    )
                    raise CycleDetectedError(f"state revisit in Algorithm D on {lit}")
                seen_states.add(key)
            eligible = [
                c
                for c in store.focused_on(negate(lit))
                if concept_type(c, work) is ConceptType.CPLUS
                and (allow_reconsider or c.identity not in considered)
            ]
            if not eligible:
                ctx.emit(tr.RECURSE_EXIT, lit=lit, result="success")
                return (SUCCESS, work)
            ci = ctx.choose("D.concept", len(eligible))
            concept = eligible[ci]
            considered.add(concept.identity)
            ctx.emit(tr.CONCEPT_CONSIDERED, concept=concept.label(), focus_of=lit)
            q = [s for s in concept.siblings if s not in protected]
            jumped = False
            while q:
                li = ctx.choose("D.literal", len(q))
                l = q.pop(li)
                sub: Optional[Understanding] = None
                if work.get(l) is FALSE:
                    status, child = algorithm_d(
                        work, store, l, protected | {lit}, ctx, allow_reconsider
                    )
                    if status == FAIL:
                        continue  # go to the inner while: next literal
                    sub = child
                gsub = store.restricted_to_variable(abs(l))
                if algorithm_g(work, gsub, l, ctx):
                    if sub is not None:
                        work = sub
                    flips = Worklist()
                    for f in set_mark_tracked(work, store, l, TRUE, ctx):
                        flips.push(f)
                    for f in set_mark_tracked(work, store, negate(l), FALSE, ctx):
                        flips.push(f)
                    if compute(work, store, flips, ctx) == COMPUTE_UNDEFINED:
                        raise UndefinedHitError(
                            f"compute hit the omitted case inside Algorithm D on {l}"
                        )
                    jumped = True
                    break  # go to line 1: restart the outer while
            if not jumped:
                ctx.emit(tr.RECURSE_EXIT, lit=lit, result="fail")
                return (FAIL, None)
    finally:
        ctx.depth -= 1


def algorithm_u(formula: Formula, ctx: RunContext, allow_reconsider: bool = False) -> RunOutcome:
    """Transcribed Algorithm U over a duplicate-free 3-CNF formula.

    Clauses are adopted one at a time; when the chosen clause has all three
    literals false, Algorithm D is tried per literal (H empty) and total
    failure returns FAIL. Concept insertion takes not-false literals first,
    the partition fixed at loop entry, order otherwise policy-driven.

    Normal termination is classified: Defined when the final fixpoint passes
    is_defined, otherwise Undefined with detail "fixpoint_not_defined" (the
    published claim that termination yields a defined understanding does not
    survive its own worklist rules).
    """
    u = Understanding.all_free(formula)
    store = ConceptStore(formula)
    adopted: set[int] = set()
    try:
        while len(adopted) < len(formula.clauses):
            unadopted = [c.id for c in formula.clauses if c.id not in adopted]
            ci = ctx.choose("U.clause", len(unadopted))
            clause = formula.clauses[unadopted[ci]]
            if all(u.get(l) is FALSE for l in clause.literals):
                rescued = False
                remaining = list(clause.literals)
                while remaining:
                    li = ctx.choose("U.literal", len(remaining))
                    lam = remaining.pop(li)
                    status, child = algorithm_d(
                        u, store, lam, frozenset(), ctx, allow_reconsider
                    )
                    if status == SUCCESS:
                        assert child is not None
                        u = child
                        rescued = True
                        break
                if not rescued:
                    return RunOutcome(FAIL, u, store, ctx.steps)
            not_false = [l for l in clause.literals if u.get(l) is not FALSE]
            false = [l for l in clause.literals if u.get(l) is FALSE]
            while not_false or false:
                group = not_false if not_false else false
                li = ctx.choose("U.literal", len(group))
                lam = group.pop(li)
                concept = concept_of(lam, clause)
                assert concept is not None
                before = any_cplus(store, lam, u)
                store.add(concept)
                ctx.emit(tr.CONCEPT_ADDED, concept=concept.label())
                wl = Worklist([lam] if any_cplus(store, lam, u) != before else [])
                if compute(u, store, wl, ctx) == COMPUTE_UNDEFINED:
                    return RunOutcome(UNDEFINED, u, store, ctx.steps, detail="compute")
                adopted.add(clause.id)
    except UndefinedHitError as exc:
        return RunOutcome(UNDEFINED, None, store, ctx.steps, detail=str(exc))
    except CycleDetectedError as exc:
        return RunOutcome(CYCLE_DETECTED, None, store, ctx.steps, detail=str(exc))
    except BudgetExhaustedError as exc:
        return RunOutcome(BUDGET_EXHAUSTED, None, store, ctx.steps, detail=str(exc))
    if is_defined(u, store):
        return RunOutcome(DEFINED, u, store, ctx.steps)
    return RunOutcome(UNDEFINED, u, store, ctx.steps, detail="fixpoint_not_defined")


# -- public run wrappers ------------------------------------------------------


def run_compute(
    u: Understanding,
    store: ConceptStore,
    pending: Iterable[int],
    policy: Optional[ChoicePolicy] = None,
    budget: int = DEFAULT_BUDGET,
    trace: Optional[tr.TraceLog] = None,
) -> RunOutcome:
    ctx = RunContext(policy, trace, budget)
    try:
        status = compute(u, store, Worklist(pending), ctx)
    except BudgetExhaustedError as exc:
        return RunOutcome(BUDGET_EXHAUSTED, None, store, ctx.steps, detail=str(exc))
    if status == COMPUTE_UNDEFINED:
        return RunOutcome(UNDEFINED, u, store, ctx.steps)
    return RunOutcome(SUCCESS, u, store, ctx.steps)


def run_algorithm_g(
    formula: Formula,
    u: Understanding,
    store: ConceptStore,
    lit: int,
    policy: Optional[ChoicePolicy] = None,
    budget: int = DEFAULT_BUDGET,
    trace: Optional[tr.TraceLog] = None,
) -> bool:
    if store.formula is not formula and store.formula != formula:
        raise ValueError("store was built over a different formula")
    ctx = RunContext(policy, trace, budget)
    return algorithm_g(u, store, lit, ctx)


def run_algorithm_d(
    u: Understanding,
    store: ConceptStore,
    lit: int,
    protected: frozenset[int] = frozenset(),
    policy: Optional[ChoicePolicy] = None,
    budget: int = DEFAULT_BUDGET,
    max_depth: int = DEFAULT_MAX_DEPTH,
    trace: Optional[tr.TraceLog] = None,
    allow_reconsider: bool = False,
) -> RunOutcome:
    ctx = RunContext(policy, trace, budget, max_depth)
    try:
        status, result = algorithm_d(u, store, lit, protected, ctx, allow_reconsider)
    except UndefinedHitError as exc:
        return RunOutcome(UNDEFINED, None, store, ctx.steps, detail=str(exc))
    except CycleDetectedError as exc:
        return RunOutcome(CYCLE_DETECTED, None, store, ctx.steps, detail=str(exc))
    except BudgetExhaustedError as exc:
        return RunOutcome(BUDGET_EXHAUSTED, None, store, ctx.steps, detail=str(exc))
    if status == SUCCESS:
        return RunOutcome(SUCCESS, result, store, ctx.steps)
    return RunOutcome(FAIL, None, store, ctx.steps)


def run_algorithm_u(
    formula: Formula,
    policy: Optional[ChoicePolicy] = None,
    budget: int = DEFAULT_BUDGET,
    max_depth: int = DEFAULT_MAX_DEPTH,
    trace: Optional[tr.TraceLog] = None,
    allow_reconsider: bool = False,
) -> RunOutcome:
    ctx = RunContext(policy, trace, budget, max_depth)
    try:
        return algorithm_u(formula, ctx, allow_reconsider)
    except BudgetExhaustedError as exc:
        return RunOutcome(BUDGET_EXHAUSTED, None, None, ctx.steps, detail=str(exc))
