"""Strict implication and nonimplication: tableau, fragment engines and fact databases.

Formulas use the ASCII syntax ``~ & | ->`` with ``=>`` for strict implication
and ``=/>`` for strict nonimplication. Results come back as plain dicts.
"""

import json

from . import _slogic
from ._slogic import ENGINE_VERSION, EngineError, FragmentError, ParseError, normalize, strict_negation

__all__ = [
    "ENGINE_VERSION",
    "EngineError",
    "FragmentError",
    "ParseError",
    "check",
    "decide",
    "matrix",
    "normalize",
    "oracle",
    "query",
    "satisfies",
    "saturate",
    "strict_negation",
]


def decide(theory, query):
    """Tableau decision for ``theory |= query``; includes the tableau and any countermodel."""
    return json.loads(_slogic.decide_json(list(theory), query))


def oracle(theory, query):
    """Brute-force semantic decision, for cross-checking."""
    return json.loads(_slogic.oracle_json(list(theory), query))


def satisfies(frame, formulas):
    """Whether ``frame`` (a dict with a ``worlds`` list) satisfies every formula."""
    return _slogic.satisfies(json.dumps(frame), list(formulas))


def query(slt_text, formula, engine="auto"):
    return json.loads(_slogic.query_json(slt_text, formula, engine))


def check(slt_text, engine="auto"):
    return json.loads(_slogic.check_json(slt_text, engine))


def matrix(slt_text, engine="auto"):
    return json.loads(_slogic.matrix_json(slt_text, engine))


def saturate(slt_text, max_ante=3):
    return json.loads(_slogic.saturate_json(slt_text, max_ante))
