"""Command-line surface.

Exit codes: 0 completed with the expected verdict (refute: CONFIRMED);
1 disagreement found / refutation not confirmed; 2 input error;
3 budget or enumeration cap exhausted.
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional

from . import counterexamples as cx
from . import kernels
from .algorithms import (
    BUDGET_EXHAUSTED,
    CYCLE_DETECTED,
    DEFAULT_BUDGET,
    DEFAULT_MAX_DEPTH,
    run_algorithm_u,
)
from .core import FREE, Mark, defined_violations, ConceptStore, is_defined
from .dimacs import (
    DimacsError,
    emit_dimacs,
    emit_understanding,
    parse_dimacs,
    parse_dimacs_general,
    parse_understanding,
)
from .fuzz import FuzzConfig, fuzz_differential
from .oracle import CapExceededError, brute_force_sat, enumerate_defined
from .policies import ChoiceScript, ScriptExhaustedError, make_policy
from .reduction import reduce_to_duplicate_free
from .trace import TraceLog

EXIT_OK = 0
EXIT_FINDING = 1
EXIT_INPUT = 2
EXIT_EXHAUSTED = 3


def _read(path: str) -> str:
    try:
        with open(path, "r", encoding="ascii") as fh:
            return fh.read()
    except OSError as exc:
        raise DimacsError(f"cannot read {path}: {exc.strerror}", 0)


def _policy_from_args(args) -> object:
    if args.script:
        return make_policy("scripted", script=ChoiceScript.load(args.script))
    if args.policy == "random":
        return make_policy("seeded_random", seed=args.seed)
    return make_policy("fifo")


def _cmd_solve(args) -> int:
    formula = parse_dimacs(_read(args.formula))
    trace: Optional[TraceLog] = TraceLog() if args.trace else None
    outcome = run_algorithm_u(
        formula,
        policy=_policy_from_args(args),
        budget=args.budget,
        max_depth=args.depth,
        trace=trace,
        allow_reconsider=args.reconsider,
    )
    if trace is not None:
        trace.write(args.trace)
    print(f"status: {outcome.status}" + (f" ({outcome.detail})" if outcome.detail else ""))
    print(f"steps: {outcome.steps}")
    if outcome.understanding is not None:
        sys.stdout.write(emit_understanding(outcome.understanding))
    if outcome.status in (BUDGET_EXHAUSTED, CYCLE_DETECTED):
        return EXIT_EXHAUSTED
    return EXIT_OK


def _parse_lit(token: str) -> int:
    try:
        lit = int(token)
    except ValueError:
        raise DimacsError(f"not a literal: {token!r}", 0)
    if lit == 0:
        raise DimacsError("0 is not a literal", 0)
    return lit


def _cmd_oracle(args) -> int:
    formula = parse_dimacs(_read(args.formula))
    if args.enumerate_defined or args.free:
        constraint = None
        if args.free:
            constraint = (_parse_lit(args.free), FREE)
        report = enumerate_defined(formula, constraint=constraint, cap=args.defined_cap)
        label = f" with {args.free} free" if args.free else ""
        print(f"defined understandings{label}: {report.defined_count}")
        if report.free_witness is not None and args.witness:
            sys.stdout.write(emit_understanding(report.free_witness))
    else:
        report = brute_force_sat(formula, cap=args.sat_cap)
        print(f"satisfiable: {report.satisfiable} ({report.model_count} models)")
        if args.witness and report.witness is not None:
            line = " ".join(
                str(v if val else -v) for v, val in sorted(report.witness.items())
            )
            print(f"witness: {line}")
    return EXIT_OK


def _cmd_reduce(args) -> int:
    general = parse_dimacs_general(_read(args.formula))
    report = reduce_to_duplicate_free(general, share_forced_variable=args.share_forced)
    text = emit_dimacs(report.output)
    if args.output:
        with open(args.output, "w", encoding="ascii") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    print(
        f"c tautologies removed: {report.removed_tautologies}, "
        f"gadgets: {report.gadgets_added}, fresh variables: {len(report.fresh_variables)}",
        file=sys.stderr,
    )
    return EXIT_OK


_REFUTE_NAMES = {
    "d": "algorithm_d_wrong_success",
    "d-loop": "algorithm_d_nontermination",
    "u": "algorithm_u_wrong_fail",
}


def _cmd_refute(args) -> int:
    trace = TraceLog()
    result = cx.run_refutation(_REFUTE_NAMES[args.which], budget=args.budget, trace=trace)
    if args.trace:
        trace.write(args.trace)
    print(f"refutation: {result.name}")
    print(f"run outcome: {result.run_outcome.status} ({result.run_outcome.steps} steps)")
    if result.detail:
        print(f"detail: {result.detail}")
    print(f"oracle: {result.oracle_summary}")
    print(f"verdict: {'CONFIRMED' if result.confirmed else 'NOT CONFIRMED'}")
    return EXIT_OK if result.confirmed else EXIT_FINDING


def _cmd_fuzz(args) -> int:
    cfg = FuzzConfig(
        seed=args.seed,
        instances=args.instances,
        variables=(args.vars[0], args.vars[1]),
        clauses=(args.clauses[0], args.clauses[1]),
        policy="seeded_random" if args.policy == "random" else "fifo",
        dedupe_mode="reduce_first" if args.dedupe == "reduce" else "reject_duplicates",
        budget=args.budget,
    )
    extra = None
    if args.seed_corpus_u:
        extra = [("instance_u", cx.instance_u(), cx.adversarial_script_u())]
    report = fuzz_differential(cfg, extra=extra)
    print(f"instances: {report.total}")
    for status, n in sorted(report.status_counts.items()):
        print(f"  {status}: {n}")
    print(f"disagreements: {len(report.disagreements)}")
    for d in report.disagreements:
        print(f"  #{d.index} {d.kind} (shrunk to {d.shrunk_clauses} clauses)")
    if report.audit_failures:
        print(f"audit failures: {report.audit_failures}")
    print(f"report digest: {report.digest()}")
    if args.artifacts:
        for p in report.write_artifacts(args.artifacts):
            print(f"wrote {p}")
    return EXIT_FINDING if report.disagreements else EXIT_OK


def _cmd_check_defined(args) -> int:
    formula = parse_dimacs(_read(args.formula))
    u = parse_understanding(_read(args.understanding), formula)
    store = ConceptStore.full(formula)
    if is_defined(u, store):
        print("defined: true")
    else:
        print("defined: false")
        for lit, actual, required in defined_violations(u, store):
            req = required.token if required is not None else "undefined-case"
            print(f"  literal {lit}: marked {actual.token}, table requires {req}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="marksat",
        description="Three-valued mark procedures for 3-SAT, exact oracles, and "
        "the counterexample harness refuting them",
    )
    p.add_argument(
        "--kernel-backend",
        action="store_true",
        help="print the active enumeration kernel backend and exit",
    )
    sub = p.add_subparsers(dest="command")

    sp = sub.add_parser("solve", help="run the clause-adoption solver on a DIMACS file")
    sp.add_argument("formula")
    sp.add_argument("--policy", choices=["fifo", "random"], default="fifo")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--script", help="choice script file (overrides --policy)")
    sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    sp.add_argument("--depth", type=int, default=DEFAULT_MAX_DEPTH)
    sp.add_argument("--trace", help="write the event trace to this path")
    sp.add_argument(
        "--reconsider",
        action="store_true",
        help="allow reconsidering concepts (enables cycle detection)",
    )
    sp.set_defaults(func=_cmd_solve)

    op = sub.add_parser("oracle", help="exact brute-force queries")
    op.add_argument("formula")
    op.add_argument("--witness", action="store_true")
    op.add_argument("--enumerate-defined", action="store_true")
    op.add_argument("--free", metavar="LIT", help="constrain the literal to the free mark")
    op.add_argument("--sat-cap", type=int, default=24)
    op.add_argument("--defined-cap", type=int, default=8)
    op.set_defaults(func=_cmd_oracle)

    rp = sub.add_parser("reduce", help="reduce general 3-SAT to duplicate-free form")
    rp.add_argument("formula")
    rp.add_argument("--output")
    rp.add_argument("--share-forced", action="store_true")
    rp.set_defaults(func=_cmd_reduce)

    fp = sub.add_parser("refute", help="replay a documented refutation")
    fp.add_argument("which", choices=["d", "d-loop", "u"])
    fp.add_argument("--budget", type=int, default=None)
    fp.add_argument("--trace")
    fp.set_defaults(func=_cmd_refute)

    zp = sub.add_parser("fuzz", help="differential fuzzing against the oracle")
    zp.add_argument("--seed", type=int, default=0)
    zp.add_argument("--instances", type=int, default=100)
    zp.add_argument("--vars", type=int, nargs=2, default=[3, 4], metavar=("LO", "HI"))
    zp.add_argument("--clauses", type=int, nargs=2, default=[2, 6], metavar=("LO", "HI"))
    zp.add_argument("--policy", choices=["fifo", "random"], default="fifo")
    zp.add_argument("--dedupe", choices=["reject", "reduce"], default="reject")
    zp.add_argument("--budget", type=int, default=10**5)
    zp.add_argument("--artifacts", help="directory for shrunk disagreement DIMACS files")
    zp.add_argument(
        "--seed-corpus-u",
        action="store_true",
        help="prepend the 13-clause instance with its adversarial script",
    )
    zp.set_defaults(func=_cmd_fuzz)

    cp = sub.add_parser("check-defined", help="check a mark table against the case table")
    cp.add_argument("formula")
    cp.add_argument("understanding")
    cp.set_defaults(func=_cmd_check_defined)
    return p


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.kernel_backend:
        print(f"kernel backend: {kernels.BACKEND}")
        return EXIT_OK
    if not getattr(args, "command", None):
        parser.print_help()
        return EXIT_INPUT
    try:
        return args.func(args)
    except CapExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_EXHAUSTED
    except (DimacsError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ScriptExhaustedError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
