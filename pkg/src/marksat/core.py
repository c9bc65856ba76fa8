"""Problem representation for duplicate-free 3-CNF with three-valued literal marks.

Literals are DIMACS-style signed integers: variable ``v`` is the literal ``v``,
its negation is ``-v``. Marks come from {t, f, e} where ``e`` is the free mark.
A mark map (here: Understanding) is total over both polarities of every
variable and deliberately carries NO consistency constraint between a literal
and its negation; consistency is a property checked by `is_defined`, never
enforced by construction.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional, Sequence


class Mark(enum.IntEnum):
    FREE = 0
    TRUE = 1
    FALSE = 2

    @property
    def token(self) -> str:
        return _MARK_TOKENS[self]

    @classmethod
    def from_token(cls, token: str) -> "Mark":
        try:
            return _TOKEN_MARKS[token]
        except KeyError:
            raise ValueError(f"unknown mark token {token!r} (expected t, f or e)") from None


_MARK_TOKENS = {Mark.FREE: "e", Mark.TRUE: "t", Mark.FALSE: "f"}
_TOKEN_MARKS = {"e": Mark.FREE, "t": Mark.TRUE, "f": Mark.FALSE}

FREE = Mark.FREE
TRUE = Mark.TRUE
FALSE = Mark.FALSE


class ConceptType(enum.Enum):
    CSTAR = "cstar"  # sibling marks contain t
    CPLUS = "cplus"  # sibling marks contain no t


def negate(lit: int) -> int:
    """Flip the polarity of a literal."""
    if lit == 0:
        raise ValueError("0 is not a literal")
    return -lit


def lit_index(lit: int) -> int:
    """Dense slot of a literal: variable-major, positive polarity first."""
    v = abs(lit)
    return 2 * (v - 1) + (0 if lit > 0 else 1)


def index_lit(idx: int) -> int:
    v = idx // 2 + 1
    return v if idx % 2 == 0 else -v


def lit_order_key(lit: int) -> tuple[int, int]:
    """Deterministic literal ordering: by variable index, positive first."""
    return (abs(lit), 0 if lit > 0 else 1)


@dataclass(frozen=True)
class Clause:
    """One 3-literal clause; the three variables must be pairwise distinct."""

    id: int
    literals: tuple[int, int, int]

    def __post_init__(self) -> None:
        if len(self.literals) != 3:
            raise ValueError(f"clause {self.id}: expected exactly 3 literals")
        if any(l == 0 for l in self.literals):
            raise ValueError(f"clause {self.id}: 0 is not a literal")
        vs = {abs(l) for l in self.literals}
        if len(vs) != 3:
            raise ValueError(f"clause {self.id}: duplicate variable in {self.literals}")

    def __contains__(self, lit: int) -> bool:
        return lit in self.literals

    def variables(self) -> frozenset[int]:
        return frozenset(abs(l) for l in self.literals)


class Formula:
    """A duplicate-free 3-CNF instance: a dense sequence of clauses."""

    def __init__(self, clause_literals: Iterable[Sequence[int]], num_vars: Optional[int] = None):
        self.clauses: list[Clause] = [
            Clause(i, (int(a), int(b), int(c))) for i, (a, b, c) in enumerate(clause_literals)
        ]
        occurring = max((abs(l) for c in self.clauses for l in c.literals), default=0)
        self.num_vars: int = max(occurring, num_vars or 0)
        self.variables: frozenset[int] = frozenset(
            abs(l) for c in self.clauses for l in c.literals
        )

    def __len__(self) -> int:
        return len(self.clauses)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Formula):
            return NotImplemented
        return self.num_vars == other.num_vars and [c.literals for c in self.clauses] == [
            c.literals for c in other.clauses
        ]

    def __repr__(self) -> str:
        return f"Formula(num_vars={self.num_vars}, clauses={[c.literals for c in self.clauses]})"

    def literals(self) -> Iterator[int]:
        """All literals of both polarities, in the deterministic order."""
        for v in range(1, self.num_vars + 1):
            yield v
            yield -v


class Understanding:
    """Total map from literals to marks, both polarities stored independently."""

    __slots__ = ("num_vars", "_marks")

    def __init__(self, num_vars: int, marks: Optional[list[int]] = None):
        self.num_vars = num_vars
        if marks is None:
            self._marks = [0] * (2 * num_vars)
        else:
            if len(marks) != 2 * num_vars:
                raise ValueError("mark vector has wrong length")
            self._marks = list(marks)

    @classmethod
    def all_free(cls, formula: Formula) -> "Understanding":
        return cls(formula.num_vars)

    @classmethod
    def from_dict(cls, formula: Formula, table: dict[int, Mark]) -> "Understanding":
        u = cls(formula.num_vars)
        for lit, mark in table.items():
            u.set(lit, mark)
        return u

    def get(self, lit: int) -> Mark:
        return Mark(self._marks[lit_index(lit)])

    def set(self, lit: int, mark: Mark) -> None:
        self._marks[lit_index(lit)] = int(mark)

    def copy(self) -> "Understanding":
        return Understanding(self.num_vars, self._marks)

    def snapshot(self) -> tuple[int, ...]:
        return tuple(self._marks)

    def restore(self, snap: Sequence[int]) -> None:
        self._marks[:] = snap

    def items(self) -> Iterator[tuple[int, Mark]]:
        for idx, m in enumerate(self._marks):
            yield index_lit(idx), Mark(m)

    def as_dict(self) -> dict[int, Mark]:
        return dict(self.items())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Understanding):
            return NotImplemented
        return self.num_vars == other.num_vars and self._marks == other._marks

    def __repr__(self) -> str:
        parts = ", ".join(f"{lit}:{m.token}" for lit, m in self.items())
        return f"Understanding({parts})"


@dataclass(frozen=True)
class Concept:
    """The two sibling literals of a focus literal within one clause.

    Identity is (clause_id, focus); the sibling marks are always read live
    from the current understanding, never cached here.
    """

    clause_id: int
    focus: int
    siblings: tuple[int, int] = field(compare=False)

    @property
    def identity(self) -> tuple[int, int]:
        return (self.clause_id, self.focus)

    def label(self) -> str:
        return f"{self.clause_id}/{self.focus}"


def concept_of(lit: int, clause: Clause) -> Optional[Concept]:
    """The concept of ``lit`` in ``clause``; None when the literal is absent."""
    if lit not in clause.literals:
        return None
    sibs = tuple(l for l in clause.literals if l != lit)
    return Concept(clause.id, lit, (sibs[0], sibs[1]))


def concept_type(concept: Concept, u: Understanding) -> ConceptType:
    """CSTAR iff the sibling-mark multiset contains t, CPLUS otherwise."""
    s1, s2 = concept.siblings
    if u.get(s1) is TRUE or u.get(s2) is TRUE:
        return ConceptType.CSTAR
    return ConceptType.CPLUS


class ConceptStore:
    """The incrementally built concept set with its per-focus and per-sibling views.

    Membership is append-only; all type information is derived from the live
    understanding at query time.
    """

    def __init__(self, formula: Formula):
        self.formula = formula
        self.concepts: list[Concept] = []
        self.by_focus: dict[int, list[Concept]] = {}
        self.by_sibling: dict[int, list[Concept]] = {}
        self._ids: set[tuple[int, int]] = set()

    @classmethod
    def full(cls, formula: Formula) -> "ConceptStore":
        """Store holding every concept of every clause, in clause/literal order."""
        store = cls(formula)
        for clause in formula.clauses:
            for lit in clause.literals:
                c = concept_of(lit, clause)
                assert c is not None
                store.add(c)
        return store

    def add(self, concept: Concept) -> None:
        if concept.identity in self._ids:
            raise ValueError(f"concept {concept.label()} already present")
        self._ids.add(concept.identity)
        self.concepts.append(concept)
        self.by_focus.setdefault(concept.focus, []).append(concept)
        for s in concept.siblings:
            self.by_sibling.setdefault(s, []).append(concept)

    def __contains__(self, concept: Concept) -> bool:
        return concept.identity in self._ids

    def __len__(self) -> int:
        return len(self.concepts)

    def focused_on(self, lit: int) -> list[Concept]:
        return self.by_focus.get(lit, [])

    def containing(self, lit: int) -> list[Concept]:
        """Concepts with ``lit`` among their stored (sibling) literals."""
        return self.by_sibling.get(lit, [])

    def restricted_to_variable(self, var: int) -> "ConceptStore":
        """Substore of concepts whose clause mentions ``var`` (either polarity)."""
        sub = ConceptStore(self.formula)
        for c in self.concepts:
            if var in self.formula.clauses[c.clause_id].variables():
                sub.add(c)
        return sub


def any_cplus(store: ConceptStore, lit: int, u: Understanding) -> bool:
    """Whether the concept set of ``lit`` is of the C-plus set type.

    An empty set is of the C-star type and not of the C-plus type.
    """
    for c in store.focused_on(lit):
        if concept_type(c, u) is ConceptType.CPLUS:
            return True
    return False


def negative_concepts(lit: int, store: ConceptStore, u: Understanding) -> list[Concept]:
    """The C-plus typed concepts focused on the negation of ``lit``."""
    return [
        c for c in store.focused_on(negate(lit)) if concept_type(c, u) is ConceptType.CPLUS
    ]


def has_negative(lit: int, store: ConceptStore, u: Understanding) -> bool:
    for c in store.focused_on(negate(lit)):
        if concept_type(c, u) is ConceptType.CPLUS:
            return True
    return False


def required_mark(lit: int, store: ConceptStore, u: Understanding) -> Optional[Mark]:
    """The unique mark the defined-ness table dictates for ``lit``, or None.

    The table partitions on (negative set empty?, focus set of C-plus type?):
    (empty, no) -> e; (empty, yes) -> t; (nonempty, no) -> f; the remaining
    corner is the purposefully omitted case and yields None.

    Note this deliberately differs from `recalculate` (algorithms module) on
    one corner: an empty focus set with a nonempty negative set requires f
    here, while the transcribed Recalculate returns e for any empty focus set.
    The paper's own worked tables and impossibility claims need the former;
    its pseudocode spells the latter.
    """
    neg = has_negative(lit, store, u)
    plus = any_cplus(store, lit, u)
    if not neg:
        return TRUE if plus else FREE
    if not plus:
        return FALSE
    return None


def defined_violations(
    u: Understanding, store: ConceptStore
) -> list[tuple[int, Mark, Optional[Mark]]]:
    """All literals whose mark disagrees with the defined-ness table.

    Each entry is (literal, actual mark, required mark or None for the
    omitted case).
    """
    out = []
    for lit in store.formula.literals():
        req = required_mark(lit, store, u)
        if req is None or u.get(lit) is not req:
            out.append((lit, u.get(lit), req))
    return out


def is_defined(u: Understanding, store: ConceptStore) -> bool:
    """Whether every literal carries exactly the mark the case table dictates."""
    for lit in store.formula.literals():
        req = required_mark(lit, store, u)
        if req is None or u.get(lit) is not req:
            return False
    return True


def clause_satisfied(clause: Clause, u: Understanding) -> bool:
    """A clause is satisfied when some literal in it is marked t."""
    return any(u.get(l) is TRUE for l in clause.literals)


def satisfied_clause_ids(formula: Formula, u: Understanding) -> frozenset[int]:
    return frozenset(c.id for c in formula.clauses if clause_satisfied(c, u))


def equivalent(u1: Understanding, u2: Understanding, formula: Formula) -> bool:
    """Two understandings are equivalent when they satisfy the same clauses."""
    return satisfied_clause_ids(formula, u1) == satisfied_clause_ids(formula, u2)
