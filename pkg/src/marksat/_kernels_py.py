"""Vectorized (numpy) enumeration kernels; fallback when the compiled twin
is unavailable. Must stay observably identical to `_kernels.pyx`: same
enumeration order, same counts, same first witness.

Mark-map enumeration order: literal slots are variable-major with the
positive polarity first; the LAST slot varies fastest; digit values are
e(0) < t(1) < f(2). Assignment enumeration order: variable 1 is the
fastest-varying bit.
"""

from __future__ import annotations

from typing import Optional, Sequence

import numpy as np

BACKEND = "python"

_DEFINED_CHUNK = 3**9
_SAT_CHUNK = 1 << 16


def count_defined(
    n_vars: int,
    foc: Sequence[int],
    s1: Sequence[int],
    s2: Sequence[int],
    constraint_slot: int = -1,
    constraint_mark: int = -1,
    want_witness: bool = True,
) -> tuple[int, Optional[tuple[int, ...]]]:
    """Count mark maps that pass the defined-ness table; first witness in order.

    ``foc``/``s1``/``s2`` give each concept's focus and sibling literal slots.
    A constraint fixes one slot to one mark value.
    """
    nslots = 2 * n_vars
    total = 3**nslots
    foc_a = np.asarray(foc, dtype=np.int64)
    s1_a = np.asarray(s1, dtype=np.int64)
    s2_a = np.asarray(s2, dtype=np.int64)
    weights = np.array([3 ** (nslots - 1 - j) for j in range(nslots)], dtype=np.int64)
    perm = np.arange(nslots) ^ 1  # slot of the negated literal

    count = 0
    witness: Optional[tuple[int, ...]] = None
    for lo in range(0, total, _DEFINED_CHUNK):
        hi = min(lo + _DEFINED_CHUNK, total)
        ks = np.arange(lo, hi, dtype=np.int64)
        if nslots:
            marks = (ks[:, None] // weights[None, :]) % 3
        else:
            marks = np.zeros((len(ks), 0), dtype=np.int64)
        st = marks == 1
        anyc = np.zeros((len(ks), nslots), dtype=bool)
        for i in range(len(foc_a)):
            cplus = ~(st[:, s1_a[i]] | st[:, s2_a[i]])
            anyc[:, foc_a[i]] |= cplus
        if nslots:
            negm = anyc[:, perm]
            undef_any = (negm & anyc).any(axis=1)
            req = np.where(anyc, 1, 0)
            req = np.where(negm, 2, req)
            ok = (marks == req).all(axis=1) & ~undef_any
        else:
            ok = np.ones(len(ks), dtype=bool)
        if constraint_slot >= 0:
            ok &= marks[:, constraint_slot] == constraint_mark
        c = int(ok.sum())
        if c and witness is None and want_witness:
            row = int(np.argmax(ok))
            witness = tuple(int(x) for x in marks[row])
        count += c
    return count, witness


def count_sat(
    n_vars: int,
    cvars: Sequence[int],
    cpols: Sequence[int],
) -> tuple[int, int, int, int]:
    """Exact model count over 2^n assignments of a CNF given as flat triples.

    ``cvars`` holds 0-based variable indices, ``cpols`` 1 for a positive
    literal, grouped three per clause. Returns (model count, first model as a
    bit pattern or -1, AND of all models, AND of all complements); variable i
    is bit i. The two masks are meaningful only when the count is positive.
    """
    total = 1 << n_vars
    nclauses = len(cvars) // 3
    cvars_a = np.asarray(cvars, dtype=np.int64).reshape(nclauses, 3)
    cpols_a = np.asarray(cpols, dtype=np.int64).reshape(nclauses, 3)

    count = 0
    first = -1
    all_and = (1 << n_vars) - 1
    none_and = (1 << n_vars) - 1
    for lo in range(0, total, _SAT_CHUNK):
        hi = min(lo + _SAT_CHUNK, total)
        ks = np.arange(lo, hi, dtype=np.int64)
        sat = np.ones(len(ks), dtype=bool)
        for ci in range(nclauses):
            clause_ok = np.zeros(len(ks), dtype=bool)
            for j in range(3):
                bit = (ks >> cvars_a[ci, j]) & 1
                clause_ok |= bit == cpols_a[ci, j]
            sat &= clause_ok
        c = int(sat.sum())
        if c:
            models = ks[sat]
            if first < 0:
                first = int(models[0])
            all_and &= int(np.bitwise_and.reduce(models))
            none_and &= int(np.bitwise_and.reduce(~models & ((1 << n_vars) - 1)))
            count += c
    if count == 0:
        return 0, -1, 0, 0
    return count, first, all_and, none_and
