# cython: language_level=3, boundscheck=False, wraparound=False
# distutils: language = c++
"""Compiled DPLL search; same contract and event stream as ``_fallback.search``."""

from libcpp.vector cimport vector

cdef enum:
    DECIDE = 0
    PROPAGATE = 1
    CONFLICT = 2
    BACKTRACK = 3
    LEMMA = 4


cdef inline int _abs(int x) nogil:
    return x if x > 0 else -x


cdef bint _propagate(vector[int]& lits, vector[int]& starts, vector[signed char]& values,
                     vector[int]& trail, int level, bint record, list events):
    cdef bint changed = True
    cdef Py_ssize_t c, k, n_clauses
    cdef int unassigned, last, lit, var
    cdef signed char v, sign
    cdef bint satisfied
    while changed:
        changed = False
        n_clauses = <Py_ssize_t>starts.size() - 1
        for c in range(n_clauses):
            unassigned = 0
            last = 0
            satisfied = False
            for k in range(starts[c], starts[c + 1]):
                lit = lits[k]
                v = values[_abs(lit)]
                if v == 0:
                    unassigned += 1
                    last = lit
                elif (v > 0) == (lit > 0):
                    satisfied = True
                    break
            if satisfied:
                continue
            if unassigned == 0:
                return False
            if unassigned == 1:
                var = _abs(last)
                # a plain local here: a conditional expression assigned straight into
                # the vector element goes through a C++ reference temporary
                sign = 1 if last > 0 else -1
                values[var] = sign
                trail.push_back(var)
                if record:
                    events.append((PROPAGATE, last, level))
                changed = True
    return True


def search(int n_vars, clauses, order, theory_vars, theory, bint record=False):
    cdef vector[int] lits
    cdef vector[int] starts
    cdef vector[signed char] values
    cdef vector[int] trail
    cdef vector[int] dec_idx
    cdef vector[int] dec_var
    cdef vector[signed char] dec_flipped
    cdef vector[int] c_order
    cdef vector[int] c_theory
    cdef list events = []
    cdef bint ok, flipped_one
    cdef int var, v, idx, i
    cdef Py_ssize_t t

    values.resize(n_vars + 1, 0)
    starts.push_back(0)
    for clause in clauses:
        for lit in clause:
            lits.push_back(lit)
        starts.push_back(lits.size())
    for v in order:
        c_order.push_back(v)
    for v in theory_vars:
        c_theory.push_back(v)

    while True:
        ok = _propagate(lits, starts, values, trail, <int>dec_var.size(), record, events)
        if ok and c_theory.size() > 0:
            cur = []
            for t in range(<Py_ssize_t>c_theory.size()):
                v = c_theory[t]
                if values[v] != 0:
                    cur.append(v if values[v] > 0 else -v)
            lemma = theory(cur)
            if lemma is not None:
                lemma = list(lemma)
                if record:
                    events.append((LEMMA, tuple(lemma), <int>dec_var.size()))
                if not lemma:
                    return False, [values[i] for i in range(1, n_vars + 1)], events
                for lit in lemma:
                    lits.push_back(lit)
                starts.push_back(lits.size())
                ok = False
        if not ok:
            if record:
                events.append((CONFLICT, 0, <int>dec_var.size()))
            flipped_one = False
            while dec_var.size() > 0:
                idx = dec_idx.back()
                var = dec_var.back()
                flipped = dec_flipped.back()
                dec_idx.pop_back()
                dec_var.pop_back()
                dec_flipped.pop_back()
                for t in range(idx, <Py_ssize_t>trail.size()):
                    values[trail[t]] = 0
                trail.resize(idx)
                if not flipped:
                    values[var] = 1
                    trail.push_back(var)
                    dec_idx.push_back(idx)
                    dec_var.push_back(var)
                    dec_flipped.push_back(1)
                    if record:
                        events.append((BACKTRACK, var, <int>dec_var.size()))
                    flipped_one = True
                    break
            if not flipped_one:
                return False, [values[i] for i in range(1, n_vars + 1)], events
            continue
        var = 0
        for t in range(<Py_ssize_t>c_order.size()):
            if values[c_order[t]] == 0:
                var = c_order[t]
                break
        if var == 0:
            return True, [values[i] for i in range(1, n_vars + 1)], events
        dec_idx.push_back(trail.size())
        dec_var.push_back(var)
        dec_flipped.push_back(0)
        values[var] = -1
        trail.push_back(var)
        if record:
            events.append((DECIDE, -var, <int>dec_var.size()))
