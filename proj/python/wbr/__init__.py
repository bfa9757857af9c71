"""q-deformed Witt-Burnside rings: exact computations over subgroup posets.

Thin wrapper over the C++ core. Polynomials, posets, and vectors travel as
JSON documents (see the project README for the schemas); convenience helpers
here parse them into plain python structures.
"""

import json

from wbr._core import (
    abelian_poset_json,
    classify_json,
    cyclic_poset_json,
    ghost_json,
    lenart_json,
    orbit_sum_json,
    qword_aperiodic_count,
    run_cli,
    structure_table_json,
    verify_suite,
    witt_op_json,
)

__all__ = [
    "abelian_poset_json",
    "classify_json",
    "classify",
    "cyclic_poset_json",
    "ghost_json",
    "lenart_json",
    "orbit_sum",
    "orbit_sum_json",
    "qword_aperiodic_count",
    "run_cli",
    "structure_table_json",
    "verify_suite",
    "witt_op_json",
]


def _rat(doc):
    num, den = int(doc["num"]), int(doc.get("den", 1))
    if den == 1:
        return num
    from fractions import Fraction

    return Fraction(num, den)


def _qpoly(doc):
    """{q_exponent: coefficient} from a q-polynomial document."""
    out = {}
    for term in doc["terms"]:
        e = term["monomial"].get("q", 0)
        out[e] = out.get(e, 0) + _rat(term["coeff"])
    return {e: c for e, c in out.items() if c != 0}

def orbit_sum(poset_json, label):
    """M^q(x, V) as {x_exponent: {q_exponent: coefficient}}."""
    doc = json.loads(orbit_sum_json(poset_json, label))
    out = {}
    for term in doc["terms"]:
        xe = term["monomial"].get("x", 0)
        out[xe] = _qpoly(term["coeff"])
    return out


def classify(poset_json, q, r):
    """Strict-isomorphism decision as a python dict."""
    return json.loads(classify_json(poset_json, q, r))
