"""marksat: three-valued literal-mark 3-SAT procedures, exact brute-force
oracles, and a replayable counterexample harness showing where the
procedures go wrong."""

from .core import (
    FALSE,
    FREE,
    TRUE,
    Clause,
    Concept,
    ConceptStore,
    ConceptType,
    Formula,
    Mark,
    Understanding,
    clause_satisfied,
    concept_of,
    concept_type,
    equivalent,
    is_defined,
    negate,
    negative_concepts,
    required_mark,
)
from .algorithms import (
    RunOutcome,
    recalculate,
    run_algorithm_d,
    run_algorithm_g,
    run_algorithm_u,
    run_compute,
)
from .oracle import OracleReport, brute_force_sat, check_iff_claim, enumerate_defined
from .policies import ChoicePolicy, ChoiceScript, make_policy
from .reduction import ReductionReport, gadget_forces_true, reduce_to_duplicate_free
from .dimacs import emit_dimacs, parse_dimacs
from .kernels import BACKEND as KERNEL_BACKEND

__version__ = "0.1.0"

__all__ = [
    "FALSE",
    "FREE",
    "TRUE",
    "Clause",
    "Concept",
    "ConceptStore",
    "ConceptType",
    "Formula",
    "Mark",
    "Understanding",
    "clause_satisfied",
    "concept_of",
    "concept_type",
    "equivalent",
    "is_defined",
    "negate",
    "negative_concepts",
    "required_mark",
    "RunOutcome",
    "recalculate",
    "run_algorithm_d",
    "run_algorithm_g",
    "run_algorithm_u",
    "run_compute",
    "OracleReport",
    "brute_force_sat",
    "check_iff_claim",
    "enumerate_defined",
    "ChoicePolicy",
    "ChoiceScript",
    "make_policy",
    "ReductionReport",
    "gadget_forces_true",
    "reduce_to_duplicate_free",
    "emit_dimacs",
    "parse_dimacs",
    "KERNEL_BACKEND",
    "__version__",
]
