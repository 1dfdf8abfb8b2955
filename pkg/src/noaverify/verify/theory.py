"""Theory solvers for the residual comparison atoms.

Text atoms (``x = c``, ``x = y``) go to a union-find with disequalities.
Numeric atoms (``x = c``, ``x < c``, ``x <= c`` and the var-var forms) go to a
point-algebra closure over the rationals: the constants in play are chained
by strict edges, every atom becomes a weak or strict edge, and the set is
inconsistent exactly when the closure has a strict cycle or a disequality
joins two nodes forced equal. The rationals are dense and unbounded, so that
test is complete for this fragment.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from ..logic import Cmp, Kind, NumConst, TextConst, Var

NONE, WEAK, STRICT = 0, 1, 2


def _node(term):
    if isinstance(term, Var):
        return ("v", term.label)
    return ("c", term.value)


def is_text_atom(atom: Cmp) -> bool:
    for side in (atom.lhs, atom.rhs):
        if isinstance(side, TextConst) or (isinstance(side, Var) and side.kind is Kind.TEXT):
            return True
    return False


# -- numeric ----------------------------------------------------------------

def _numeric_constraints(lits):
    """Map (atom, polarity) pairs to edges (a, b, strength) meaning a <= b / a < b,
    plus disequality pairs."""
    edges, diseq = [], []
    for atom, positive in lits:
        a, b = _node(atom.lhs), _node(atom.rhs)
        op = atom.op
        if op == "=":
            if positive:
                edges += [(a, b, WEAK), (b, a, WEAK)]
            else:
                diseq.append((a, b))
        elif op == "<":
            edges.append((a, b, STRICT) if positive else (b, a, WEAK))
        elif op == "<=":
            edges.append((a, b, WEAK) if positive else (b, a, STRICT))
        elif op == ">":
            edges.append((b, a, STRICT) if positive else (a, b, WEAK))
        elif op == ">=":
            edges.append((b, a, WEAK) if positive else (a, b, STRICT))
        else:
            raise ValueError(f"unexpected numeric operator {op!r}")
    return edges, diseq


class _Closure:
    def __init__(self, edges, diseq, extra_nodes=()):
        nodes = set(extra_nodes)
        for a, b, _ in edges:
            nodes.update((a, b))
        for a, b in diseq:
            nodes.update((a, b))
        consts = sorted(n for n in nodes if n[0] == "c")
        self.nodes = sorted(nodes, key=lambda n: (n[0], str(n[1]) if n[0] == "v" else n[1]))
        self.index = {n: i for i, n in enumerate(self.nodes)}
        size = len(self.nodes)
        reach = [[NONE] * size for _ in range(size)]
        for (a, b, s) in edges:
            i, j = self.index[a], self.index[b]
            reach[i][j] = max(reach[i][j], s)
        for lo, hi in zip(consts, consts[1:]):
            reach[self.index[lo]][self.index[hi]] = STRICT
        for k in range(size):
            rk = reach[k]
            for i in range(size):
                ik = reach[i][k]
                if ik == NONE:
                    continue
                ri = reach[i]
                for j in range(size):
                    kj = rk[j]
                    if kj != NONE:
                        s = STRICT if STRICT in (ik, kj) else WEAK
                        if s > ri[j]:
                            ri[j] = s
        self.reach = reach
        self.diseq = diseq

    def consistent(self) -> bool:
        r = self.reach
        if any(r[i][i] == STRICT for i in range(len(self.nodes))):
            return False
        for a, b in self.diseq:
            i, j = self.index[a], self.index[b]
            if i == j or (r[i][j] and r[j][i]):
                return False
        return True


def numeric_consistent(lits) -> bool:
    edges, diseq = _numeric_constraints(lits)
    return _Closure(edges, diseq).consistent()


def _candidates(lo, lo_strict, hi, hi_strict):
    """Candidate points of the interval in preference order (never a closed
    upper end unless the interval is a single point)."""
    if lo is not None and hi is not None and lo == hi:
        yield lo
        return

    def inside(x):
        return (lo is None or x > lo or (x == lo and not lo_strict)) and (hi is None or x < hi)

    if inside(Fraction(0)):
        yield Fraction(0)
    if lo is not None and not lo_strict:
        yield lo
    if lo is not None and hi is not None:
        m = (lo + hi) / 2
        while True:
            yield m
            m = (lo + m) / 2
    elif lo is not None:
        for k in itertools.count(1):
            yield lo + k
    elif hi is not None:
        for k in itertools.count(1):
            yield hi - k
    else:
        for k in itertools.count(1):
            yield Fraction(k)
            yield Fraction(-k)


def numeric_witness(lits, variables=()) -> dict[str, Fraction]:
    """A rational assignment satisfying a consistent set of numeric literals."""
    edges, diseq = _numeric_constraints(lits)
    cl = _Closure(edges, diseq, extra_nodes=[("v", v) for v in variables])
    r, nodes = cl.reach, cl.nodes
    size = len(nodes)
    # strongly connected components of the <= relation
    comp = [-1] * size
    comps: list[list[int]] = []
    for i in range(size):
        if comp[i] >= 0:
            continue
        members = [j for j in range(size) if j == i or (r[i][j] and r[j][i])]
        for j in members:
            comp[j] = len(comps)
        comps.append(members)
    preds = [sum(1 for t in range(len(comps)) if t != s and r[comps[t][0]][comps[s][0]])
             for s in range(len(comps))]
    order = sorted(range(len(comps)), key=lambda s: (preds[s], min(str(nodes[i]) for i in comps[s])))
    value: dict[int, Fraction] = {}
    for s in order:
        members = comps[s]
        const = next((nodes[i][1] for i in members if nodes[i][0] == "c"), None)
        if const is None:
            rep = members[0]
            lo = lo_strict = None
            for p, v in value.items():
                st = r[p][rep]
                if st and (lo is None or v > lo or (v == lo and st == STRICT)):
                    lo, lo_strict = v, st == STRICT
            hi = hi_strict = None
            for k in range(size):
                if nodes[k][0] == "c" and r[rep][k]:
                    v = nodes[k][1]
                    if hi is None or v < hi or (v == hi and r[rep][k] == STRICT):
                        hi, hi_strict = v, r[rep][k] == STRICT
            excluded = set()
            for a, b in diseq:
                ia, ib = cl.index[a], cl.index[b]
                for mine, other in ((ia, ib), (ib, ia)):
                    if comp[mine] != s:
                        continue
                    # constants are fixed whether or not their component was placed yet
                    if nodes[other][0] == "c":
                        excluded.add(nodes[other][1])
                    elif other in value:
                        excluded.add(value[other])
            const = next(x for x in _candidates(lo, lo_strict, hi, hi_strict) if x not in excluded)
        for i in members:
            value[i] = const
    return {nodes[i][1]: v for i, v in value.items() if nodes[i][0] == "v"}


# -- text -------------------------------------------------------------------

class _UnionFind:
    def __init__(self):
        self.parent: dict = {}

    def find(self, x):
        self.parent.setdefault(x, x)
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            # deterministic representative: the smaller key
            lo, hi = sorted((ra, rb), key=repr)
            self.parent[hi] = lo


def _text_classes(lits):
    uf = _UnionFind()
    diseq = []
    for atom, positive in lits:
        if atom.op not in ("=", "!="):
            raise ValueError(f"text atoms support only = and !=, got {atom.op!r}")
        a, b = _node(atom.lhs), _node(atom.rhs)
        uf.find(a)
        uf.find(b)
        if positive == (atom.op == "="):
            uf.union(a, b)
        else:
            diseq.append((a, b))
    return uf, diseq


def text_consistent(lits) -> bool:
    uf, diseq = _text_classes(lits)
    constant_of: dict = {}
    for node in list(uf.parent):
        if node[0] == "c":
            root = uf.find(node)
            if root in constant_of and constant_of[root] != node[1]:
                return False
            constant_of[root] = node[1]
    return all(uf.find(a) != uf.find(b) for a, b in diseq)


def fresh_token(n: int) -> str:
    return f"<fresh-{n}>"


def text_witness(lits, variables=()) -> dict[str, str]:
    uf, _ = _text_classes(lits)
    for v in variables:
        uf.find(("v", v))
    constants = {n[1] for n in uf.parent if n[0] == "c"}
    value_of: dict = {}
    for node in uf.parent:
        if node[0] == "c":
            value_of[uf.find(node)] = node[1]
    out = {}
    counter = itertools.count(1)
    for node in sorted((n for n in uf.parent if n[0] == "v"), key=lambda n: n[1]):
        root = uf.find(node)
        if root not in value_of:
            token = fresh_token(next(counter))
            while token in constants:
                token = fresh_token(next(counter))
            value_of[root] = token
        out[node[1]] = value_of[root]
    return out


# -- combination ------------------------------------------------------------

def _minimal_conflict(lits, consistent):
    """Deletion-minimize an inconsistent literal list in its given order."""
    core = list(lits)
    i = 0
    while i < len(core):
        trial = core[:i] + core[i + 1:]
        if not consistent(trial):
            core = trial
        else:
            i += 1
    return core


class Theory:
    """Callback handed to the search kernel.

    ``atoms`` maps solver variables to their comparison atoms. The callback
    receives signed literals and returns a lemma (the negation of a minimal
    inconsistent subset) or ``None``.
    """

    def __init__(self, atoms: dict[int, Cmp]):
        self.atoms = atoms
        self.text_vars = sorted(v for v, a in atoms.items() if is_text_atom(a))
        self.numeric_vars = sorted(v for v in atoms if v not in set(self.text_vars))
        self.calls = 0

    @property
    def variables(self) -> list[int]:
        return sorted(self.atoms)

    def _split(self, lits):
        text, num = [], []
        for lit in lits:
            var = abs(lit)
            pair = (lit, (self.atoms[var], lit > 0))
            (text if var in self.atoms and is_text_atom(self.atoms[var]) else num).append(pair)
        return text, num

    def __call__(self, lits):
        self.calls += 1
        text, num = self._split(lits)
        for group, check in ((text, text_consistent), (num, numeric_consistent)):
            if group and not check([p for _, p in group]):
                core = _minimal_conflict(group, lambda g: check([p for _, p in g]))
                return [-lit for lit, _ in core]
        return None

    def witness(self, lits, numeric_vars=(), text_vars=()):
        text, num = self._split(lits)
        out = {}
        out.update(numeric_witness([p for _, p in num], numeric_vars))
        out.update(text_witness([p for _, p in text], text_vars))
        return out


def atom_sort(atom: Cmp) -> Kind:
    return Kind.TEXT if is_text_atom(atom) else Kind.NUMERIC


__all__ = ["Theory", "numeric_consistent", "numeric_witness", "text_consistent",
           "text_witness", "fresh_token", "atom_sort", "NumConst"]
