"""Pure-Python DPLL search: chronological backtracking, full-scan unit propagation.

Variables are numbered 1..n. Literals are signed ints. ``theory`` is called at
every propagation fixpoint with the current literals over ``theory_vars`` and
returns either ``None`` (consistent) or a lemma clause that the current
assignment falsifies; an empty lemma means the theory is unsatisfiable
outright. Event codes: 0 decide, 1 propagate, 2 conflict, 3 backtrack, 4 lemma.
"""

from __future__ import annotations

DECIDE, PROPAGATE, CONFLICT, BACKTRACK, LEMMA = range(5)


def search(n_vars, clauses, order, theory_vars, theory, record=False):
    clauses = [list(c) for c in clauses]
    values = [0] * (n_vars + 1)
    trail: list[int] = []
    decisions: list[tuple[int, int, bool]] = []
    events: list[tuple] = []
    theory_vars = list(theory_vars)

    def propagate() -> bool:
        changed = True
        while changed:
            changed = False
            for clause in clauses:
                unassigned = 0
                last = 0
                satisfied = False
                for lit in clause:
                    v = values[lit if lit > 0 else -lit]
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
                    var = last if last > 0 else -last
                    values[var] = 1 if last > 0 else -1
                    trail.append(var)
                    if record:
                        events.append((PROPAGATE, last, len(decisions)))
                    changed = True
        return True

    while True:
        ok = propagate()
        if ok and theory_vars:
            lits = [v if values[v] > 0 else -v for v in theory_vars if values[v] != 0]
            lemma = theory(lits)
            if lemma is not None:
                lemma = list(lemma)
                if record:
                    events.append((LEMMA, tuple(lemma), len(decisions)))
                if not lemma:
                    return False, values[1:], events
                clauses.append(lemma)
                ok = False
        if not ok:
            if record:
                events.append((CONFLICT, 0, len(decisions)))
            flipped_one = False
            while decisions:
                idx, var, flipped = decisions.pop()
                for v in trail[idx:]:
                    values[v] = 0
                del trail[idx:]
                if not flipped:
                    values[var] = 1
                    trail.append(var)
                    decisions.append((idx, var, True))
                    if record:
                        events.append((BACKTRACK, var, len(decisions)))
                    flipped_one = True
                    break
            if not flipped_one:
                return False, values[1:], events
            continue
        var = 0
        for v in order:
            if values[v] == 0:
                var = v
                break
        if var == 0:
            return True, values[1:], events
        decisions.append((len(trail), var, False))
        values[var] = -1
        trail.append(var)
        if record:
            events.append((DECIDE, -var, len(decisions)))
