"""Strict 3-CNF DIMACS dialect: one clause per line, exactly three nonzero
literals before the terminating 0. The general mode accepts duplicate
variables inside a clause (input for the reducer); strict mode rejects them.
Understanding documents serialize mark tables as "<signed literal> <t|f|e>"
lines.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .core import Formula, Mark, Understanding, lit_order_key
from .reduction import GeneralClause


class DimacsError(ValueError):
    def __init__(self, message: str, line: int, col: int = 1):
        super().__init__(f"line {line}, col {col}: {message}")
        self.line = line
        self.col = col


@dataclass
class DimacsDocument:
    num_vars: int
    num_clauses: int
    clauses: list[GeneralClause]
    comments: list[str] = field(default_factory=list)


def _token_col(line: str, token_index: int) -> int:
    col = 1
    seen = 0
    i = 0
    while i < len(line):
        if line[i].isspace():
            i += 1
            continue
        start = i
        while i < len(line) and not line[i].isspace():
            i += 1
        if seen == token_index:
            return start + 1
        seen += 1
    return col


def parse_dimacs_document(text: str) -> DimacsDocument:
    header: tuple[int, int] | None = None
    clauses: list[GeneralClause] = []
    comments: list[str] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("c"):
            comments.append(raw)
            continue
        if line.startswith("p"):
            if header is not None:
                raise DimacsError("duplicate header line", lineno)
            fields = line.split()
            if len(fields) != 4 or fields[0] != "p" or fields[1] != "cnf":
                raise DimacsError(f"malformed header {line!r}", lineno)
            try:
                nv, nc = int(fields[2]), int(fields[3])
            except ValueError:
                raise DimacsError(f"malformed header {line!r}", lineno) from None
            if nv < 0 or nc < 0:
                raise DimacsError("negative counts in header", lineno)
            header = (nv, nc)
            continue
        if header is None:
            raise DimacsError("clause line before 'p cnf' header", lineno)
        tokens = line.split()
        values = []
        for ti, tok in enumerate(tokens):
            try:
                values.append(int(tok))
            except ValueError:
                raise DimacsError(
                    f"not an integer: {tok!r}", lineno, _token_col(raw, ti)
                ) from None
        if len(values) != 4 or values[3] != 0:
            if 0 in values[:-1] or (values and values[-1] != 0):
                raise DimacsError(
                    "clause line must be 3 nonzero literals then 0", lineno
                )
            raise DimacsError(
                f"strict 3-CNF requires exactly 3 literals per clause, got {len(values) - 1}",
                lineno,
            )
        lits = values[:3]
        if any(l == 0 for l in lits):
            raise DimacsError("0 inside a clause body", lineno)
        nv = header[0]
        for ti, l in enumerate(lits):
            if abs(l) > nv:
                raise DimacsError(
                    f"variable {abs(l)} out of range (header declares {nv})",
                    lineno,
                    _token_col(raw, ti),
                )
        clauses.append((lits[0], lits[1], lits[2]))
    if header is None:
        raise DimacsError("missing 'p cnf' header", max(1, text.count("\n") + 1))
    if len(clauses) != header[1]:
        raise DimacsError(
            f"header declares {header[1]} clauses but body has {len(clauses)}",
            max(1, text.count("\n") + 1),
        )
    return DimacsDocument(header[0], header[1], clauses, comments)


def parse_dimacs(text: str, strict: bool = True) -> Formula:
    """Parse into a duplicate-free Formula; strict mode rejects duplicate
    variables within a clause (the general dialect is for the reducer)."""
    doc = parse_dimacs_document(text)
    if strict:
        for i, cl in enumerate(doc.clauses):
            if len({abs(l) for l in cl}) != 3:
                raise DimacsError(
                    f"duplicate variable in clause {i + 1}: {cl}", _clause_line(text, i)
                )
    return Formula(doc.clauses, num_vars=doc.num_vars)


def parse_dimacs_general(text: str) -> list[GeneralClause]:
    """Parse the general dialect: duplicate variables permitted per clause."""
    return parse_dimacs_document(text).clauses


def _clause_line(text: str, clause_index: int) -> int:
    seen = -1
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c") or line.startswith("p"):
            continue
        seen += 1
        if seen == clause_index:
            return lineno
    return 1


def emit_dimacs(formula: Formula, comments: tuple[str, ...] = ()) -> str:
    """Canonical emission; parse(emit(F)) == F for every Formula."""
    lines = [c if c.startswith("c") else f"c {c}" for c in comments]
    lines.append(f"p cnf {formula.num_vars} {len(formula.clauses)}")
    for clause in formula.clauses:
        a, b, c = clause.literals
        lines.append(f"{a} {b} {c} 0")
    return "\n".join(lines) + "\n"


def emit_general(clauses: list[GeneralClause], num_vars: int | None = None) -> str:
    nv = num_vars if num_vars is not None else max(
        (abs(l) for cl in clauses for l in cl), default=0
    )
    lines = [f"p cnf {nv} {len(clauses)}"]
    for a, b, c in clauses:
        lines.append(f"{a} {b} {c} 0")
    return "\n".join(lines) + "\n"


def parse_understanding(text: str, formula: Formula) -> Understanding:
    """Read a mark table and check totality against the formula's variables."""
    entries: dict[int, Mark] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        fields = line.split()
        if len(fields) != 2:
            raise DimacsError("expected '<literal> <mark>'", lineno)
        try:
            lit = int(fields[0])
        except ValueError:
            raise DimacsError(f"not a literal: {fields[0]!r}", lineno) from None
        if lit == 0 or abs(lit) > formula.num_vars:
            raise DimacsError(f"literal {lit} out of range", lineno)
        if lit in entries:
            raise DimacsError(f"duplicate entry for literal {lit}", lineno)
        try:
            entries[lit] = Mark.from_token(fields[1])
        except ValueError as exc:
            raise DimacsError(str(exc), lineno) from None
    missing = [l for l in formula.literals() if l not in entries]
    if missing:
        raise DimacsError(
            f"understanding not total: missing marks for {missing[:6]}"
            + ("..." if len(missing) > 6 else ""),
            max(1, text.count("\n") + 1),
        )
    return Understanding.from_dict(formula, entries)


def emit_understanding(u: Understanding) -> str:
    lits = sorted(
        (lit for lit, _ in u.items()), key=lit_order_key
    )
    return "\n".join(f"{lit} {u.get(lit).token}" for lit in lits) + "\n"
