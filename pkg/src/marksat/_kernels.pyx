# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled enumeration kernels; the hot inner loops of the exact oracles.

Keep observably identical to `_kernels_py.py`: same enumeration order, same
counts, same first witness. See that module for the order conventions.
"""

from libc.stdlib cimport calloc, free

BACKEND = "compiled"


def count_defined(
    int n_vars,
    foc,
    s1,
    s2,
    int constraint_slot=-1,
    int constraint_mark=-1,
    bint want_witness=True,
):
    cdef int nslots = 2 * n_vars
    cdef Py_ssize_t m = len(foc)
    cdef long long total = 1
    cdef int j
    for j in range(nslots):
        total *= 3

    cdef int* cfoc = <int*> calloc(m if m else 1, sizeof(int))
    cdef int* cs1 = <int*> calloc(m if m else 1, sizeof(int))
    cdef int* cs2 = <int*> calloc(m if m else 1, sizeof(int))
    cdef char* digits = <char*> calloc(nslots if nslots else 1, sizeof(char))
    cdef char* anyc = <char*> calloc(nslots if nslots else 1, sizeof(char))
    if not cfoc or not cs1 or not cs2 or not digits or not anyc:
        raise MemoryError()

    cdef Py_ssize_t i
    for i in range(m):
        cfoc[i] = foc[i]
        cs1[i] = s1[i]
        cs2[i] = s2[i]

    cdef long long count = 0
    cdef long long k = 0
    cdef int pos, req, cplus, neg
    cdef bint ok
    witness = None

    try:
        while k < total:
            if constraint_slot < 0 or digits[constraint_slot] == constraint_mark:
                for j in range(nslots):
                    anyc[j] = 0
                for i in range(m):
                    # concept is C-plus when neither sibling is marked t (1)
                    if digits[cs1[i]] != 1 and digits[cs2[i]] != 1:
                        anyc[cfoc[i]] = 1
                ok = True
                for j in range(nslots):
                    neg = anyc[j ^ 1]
                    cplus = anyc[j]
                    if neg:
                        if cplus:
                            ok = False  # omitted case
                            break
                        req = 2
                    else:
                        req = 1 if cplus else 0
                    if digits[j] != req:
                        ok = False
                        break
                if ok:
                    if count == 0 and want_witness:
                        witness = tuple(digits[j] for j in range(nslots))
                    count += 1
            # odometer increment: last slot varies fastest
            k += 1
            if k < total:
                j = nslots - 1
                while digits[j] == 2:
                    digits[j] = 0
                    j -= 1
                digits[j] += 1
        return int(count), witness
    finally:
        free(cfoc)
        free(cs1)
        free(cs2)
        free(digits)
        free(anyc)


def count_sat(int n_vars, cvars, cpols):
    cdef Py_ssize_t nlits = len(cvars)
    cdef Py_ssize_t nclauses = nlits // 3
    cdef int* vars_c = <int*> calloc(nlits if nlits else 1, sizeof(int))
    cdef int* pols_c = <int*> calloc(nlits if nlits else 1, sizeof(int))
    if not vars_c or not pols_c:
        raise MemoryError()
    cdef Py_ssize_t i
    for i in range(nlits):
        vars_c[i] = cvars[i]
        pols_c[i] = cpols[i]

    cdef long long total = (<long long> 1) << n_vars
    cdef long long full = total - 1
    cdef long long count = 0
    cdef long long first = -1
    cdef long long all_and = full
    cdef long long none_and = full
    cdef long long k
    cdef Py_ssize_t ci, base
    cdef bint sat, clause_ok
    cdef int j

    try:
        for k in range(total):
            sat = True
            for ci in range(nclauses):
                base = 3 * ci
                clause_ok = False
                for j in range(3):
                    if (((k >> vars_c[base + j]) & 1) == pols_c[base + j]):
                        clause_ok = True
                        break
                if not clause_ok:
                    sat = False
                    break
            if sat:
                if first < 0:
                    first = k
                all_and &= k
                none_and &= full & ~k
                count += 1
        if count == 0:
            return 0, -1, 0, 0
        return int(count), int(first), int(all_and), int(none_and)
    finally:
        free(vars_c)
        free(pols_c)
