"""DPLL search backend.

The compiled kernel is used when it was built; setting
``NOAVERIFY_PURE_PYTHON=1`` forces the pure-Python implementation. Both
produce identical results and event streams.
"""

from __future__ import annotations

import importlib
import os

from . import _fallback

DECIDE, PROPAGATE, CONFLICT, BACKTRACK, LEMMA = range(5)
EVENT_NAMES = {DECIDE: "decide", PROPAGATE: "propagate", CONFLICT: "conflict",
               BACKTRACK: "backtrack", LEMMA: "lemma"}


def _load_kernel():
    if os.environ.get("NOAVERIFY_PURE_PYTHON", "") in ("1", "true", "yes"):
        return None
    try:
        return importlib.import_module(f"{__name__}._kernel")
    except ImportError:
        return None


_kernel = _load_kernel()

BACKEND = "compiled" if _kernel is not None else "python"


def backends() -> dict:
    out = {"python": _fallback.search}
    if _kernel is not None:
        out["compiled"] = _kernel.search
    return out


def search(n_vars, clauses, order, theory_vars=(), theory=None, record=False, backend=None):
    """Run DPLL over ``clauses``; returns ``(sat, values, events)``.

    ``values[i]`` is +1/-1 for variable ``i + 1``. Variables missing from
    ``order`` are decided last, in index order.
    """
    order = list(order)
    listed = set(order)
    order += [v for v in range(1, n_vars + 1) if v not in listed]
    if theory is None:
        theory_vars, theory = (), (lambda lits: None)
    fn = backends()[backend] if backend else (_kernel.search if _kernel is not None else _fallback.search)
    return fn(n_vars, clauses, order, list(theory_vars), theory, record)
