"""Exact double L-theory: certificates, reduction and doubly-slice knot obstructions."""

import json as _json

from . import _core
from ._core import Error, Laurent, alexander_polynomial, fox_milnor_holds, levine_tristram

__all__ = [
    "Error",
    "Laurent",
    "alexander_polynomial",
    "dl_invariants",
    "dw_invariants",
    "fox_milnor_holds",
    "is_poincare",
    "knot_report",
    "lagrangian_search",
    "levine_tristram",
    "p_acyclic",
    "reduce",
    "skew_suspend",
    "verify",
]


def _dump(obj):
    return obj if isinstance(obj, str) else _json.dumps(obj)


def knot_report(record, budget=20000):
    """Obstruction report for a catalog record (dict or JSON line)."""
    return _json.loads(_core.knot_report(_dump(record), budget))


def dw_invariants(form):
    """DW invariants of {"ring", "eps", "psi"}."""
    return _json.loads(_core.dw_invariants(_dump(form)))


def lagrangian_search(form, hyperbolic=True, budget=20000):
    """List of lagrangian bases (column matrices), or None when none exists."""
    out = _core.lagrangian_search(_dump(form), hyperbolic, budget)
    return None if out is None else _json.loads(out)


def reduce(structure, compute_effects=True):
    return _json.loads(_core.reduce(_dump(structure), compute_effects))


def dl_invariants(structure):
    return _json.loads(_core.dl_invariants(_dump(structure)))


def skew_suspend(structure):
    return _json.loads(_core.skew_suspend(_dump(structure)))


def is_poincare(structure):
    return _core.is_poincare(_dump(structure))


def verify(certificate):
    """(valid, reason) for a double-cobordism certificate."""
    return _core.verify(_dump(certificate))


def p_acyclic(complex_):
    return _core.p_acyclic(_dump(complex_))
