"""Differential fuzzing: the transcribed solver against the exact oracle.

Every disagreement (FAIL or Undefined on a satisfiable instance, or a
defined result on an unsatisfiable one) is recorded, shrunk by greedy clause
deletion while the disagreement persists, and serialized as DIMACS. Reports
are deterministic functions of the config.
"""

from __future__ import annotations

import hashlib
import json
import os
import random
from dataclasses import dataclass, field
from typing import Optional

from .algorithms import DEFINED, FAIL, UNDEFINED, run_algorithm_u
from .core import Formula, is_defined
from .dimacs import emit_dimacs
from .oracle import (
    DEFAULT_DEFINED_CAP,
    DEFAULT_SAT_CAP,
    CapExceededError,
    brute_force_sat,
)
from .policies import ChoicePolicy, ChoiceScript, ScriptExhaustedError, make_policy
from .reduction import reduce_to_duplicate_free

DISAGREEMENT_KINDS = ("wrong_fail", "undefined_on_satisfiable", "wrong_success")


@dataclass
class FuzzConfig:
    seed: int = 0
    instances: int = 100
    variables: tuple[int, int] = (3, 4)
    clauses: tuple[int, int] = (2, 6)
    policy: str = "fifo"  # fifo | seeded_random
    dedupe_mode: str = "reject_duplicates"  # reject_duplicates | reduce_first
    budget: int = 10**5

    def validate(self) -> None:
        lo, hi = self.variables
        if lo < 3 or hi < lo:
            raise ValueError("variable range must satisfy 3 <= lo <= hi")
        if hi > DEFAULT_SAT_CAP or hi > DEFAULT_DEFINED_CAP:
            raise CapExceededError(
                f"variable range {self.variables} exceeds the oracle caps"
            )
        clo, chi = self.clauses
        if clo < 1 or chi < clo:
            raise ValueError("clause range must satisfy 1 <= lo <= hi")
        if self.policy not in ("fifo", "seeded_random"):
            raise ValueError("policy must be fifo or seeded_random")
        if self.dedupe_mode not in ("reject_duplicates", "reduce_first"):
            raise ValueError("bad dedupe_mode")


@dataclass
class Disagreement:
    index: int
    kind: str
    status: str
    detail: str
    dimacs: str
    shrunk_dimacs: str
    shrunk_clauses: int


@dataclass
class FuzzReport:
    config: FuzzConfig
    total: int
    status_counts: dict[str, int]
    disagreements: list[Disagreement]
    audit_failures: list[int] = field(default_factory=list)

    def digest(self) -> str:
        blob = json.dumps(
            {
                "seed": self.config.seed,
                "total": self.total,
                "status_counts": dict(sorted(self.status_counts.items())),
                "disagreements": [
                    [d.index, d.kind, d.status, d.shrunk_dimacs] for d in self.disagreements
                ],
                "audit_failures": self.audit_failures,
            },
            sort_keys=True,
        ).encode("ascii")
        return hashlib.sha256(blob).hexdigest()

    def write_artifacts(self, directory: str) -> list[str]:
        os.makedirs(directory, exist_ok=True)
        paths = []
        for d in self.disagreements:
            stem = f"disagreement_{d.index:05d}_{d.kind}"
            p = os.path.join(directory, stem + ".cnf")
            with open(p, "w", encoding="ascii") as fh:
                fh.write(f"c {d.kind}: solver said {d.status} ({d.detail})\n")
                fh.write(d.shrunk_dimacs)
            paths.append(p)
        summary = os.path.join(directory, "report.json")
        with open(summary, "w", encoding="ascii") as fh:
            json.dump(
                {
                    "digest": self.digest(),
                    "total": self.total,
                    "status_counts": self.status_counts,
                    "disagreements": [
                        {"index": d.index, "kind": d.kind, "status": d.status}
                        for d in self.disagreements
                    ],
                },
                fh,
                indent=2,
                sort_keys=True,
            )
        paths.append(summary)
        return paths


def _instance_rng(seed: int, index: int) -> random.Random:
    return random.Random(f"{seed}:{index}")


def generate_instance(cfg: FuzzConfig, index: int) -> Formula:
    """Deterministic duplicate-free instance for (seed, index)."""
    rng = _instance_rng(cfg.seed, index)
    nv = rng.randint(*cfg.variables)
    nc = rng.randint(*cfg.clauses)
    if cfg.dedupe_mode == "reject_duplicates":
        clauses = []
        for _ in range(nc):
            vs = rng.sample(range(1, nv + 1), 3)
            clauses.append(tuple(v if rng.random() < 0.5 else -v for v in vs))
        return Formula(clauses, num_vars=nv)
    general = []
    for _ in range(nc):
        general.append(
            tuple(
                rng.randint(1, nv) * (1 if rng.random() < 0.5 else -1) for _ in range(3)
            )
        )
    return reduce_to_duplicate_free(general).output


def _policy_for(cfg: FuzzConfig, index: int, script: Optional[ChoiceScript]) -> ChoicePolicy:
    if script is not None:
        return make_policy("scripted", script=script)
    if cfg.policy == "seeded_random":
        return make_policy("seeded_random", seed=_instance_rng(cfg.seed, index).getrandbits(63))
    return make_policy("fifo")


def _classify(
    formula: Formula, cfg: FuzzConfig, index: int, script: Optional[ChoiceScript]
) -> tuple[str, str, Optional[str], bool]:
    """Run solver + oracle; returns (status, detail, disagreement kind, audit_ok)."""
    try:
        outcome = run_algorithm_u(
            formula, policy=_policy_for(cfg, index, script), budget=cfg.budget
        )
    except ScriptExhaustedError:
        return ("script_error", "", None, True)
    sat = bool(brute_force_sat(formula, want_witness=False).satisfiable)
    audit_ok = True
    kind = None
    if outcome.status == FAIL and sat:
        kind = "wrong_fail"
    elif outcome.status == UNDEFINED and sat:
        kind = "undefined_on_satisfiable"
    elif outcome.status == DEFINED:
        assert outcome.understanding is not None and outcome.store is not None
        audit_ok = is_defined(outcome.understanding, outcome.store)
        if not sat:
            kind = "wrong_success"
    return (outcome.status, outcome.detail, kind, audit_ok)


def _shrink(
    formula: Formula, cfg: FuzzConfig, index: int, kind: str, script: Optional[ChoiceScript]
) -> Formula:
    """Greedy clause deletion preserving the disagreement kind."""
    current = formula
    changed = True
    while changed:
        changed = False
        for i in range(len(current.clauses)):
            if len(current.clauses) <= 1:
                break
            candidate = Formula(
                [c.literals for j, c in enumerate(current.clauses) if j != i],
                num_vars=current.num_vars,
            )
            _, _, k, _ = _classify(candidate, cfg, index, script)
            if k == kind:
                current = candidate
                changed = True
                break
    return current


def fuzz_differential(
    cfg: FuzzConfig,
    extra: Optional[list[tuple[str, Formula, Optional[ChoiceScript]]]] = None,
) -> FuzzReport:
    """Run the differential campaign; deterministic for a fixed config.

    ``extra`` entries (name, formula, optional script) are checked before the
    random corpus with negative indices, e.g. to seed the documented
    13-clause instance with its adversarial script.
    """
    cfg.validate()
    status_counts: dict[str, int] = {}
    disagreements: list[Disagreement] = []
    audit_failures: list[int] = []

    work: list[tuple[int, Formula, Optional[ChoiceScript]]] = []
    for k, (name, formula, script) in enumerate(extra or []):
        work.append((-(k + 1), formula, script))
    for i in range(cfg.instances):
        work.append((i, generate_instance(cfg, i), None))

    for index, formula, script in work:
        status, detail, kind, audit_ok = _classify(formula, cfg, index, script)
        status_counts[status] = status_counts.get(status, 0) + 1
        if not audit_ok:
            audit_failures.append(index)
        if kind is not None:
            shrunk = _shrink(formula, cfg, index, kind, script)
            disagreements.append(
                Disagreement(
                    index=index,
                    kind=kind,
                    status=status,
                    detail=detail,
                    dimacs=emit_dimacs(formula),
                    shrunk_dimacs=emit_dimacs(shrunk),
                    shrunk_clauses=len(shrunk.clauses),
                )
            )
    return FuzzReport(cfg, len(work), status_counts, disagreements, audit_failures)
