"""JSON serialization of classifications and reports.

Every document carries ``"schema": "rado-report/1"``. Counts are plain
integers; half-integer quantities are ``{"num": n, "den": d}`` objects so no
consumer ever sees a rounded float.
"""

from __future__ import annotations

import dataclasses
import enum
import json
import math
from fractions import Fraction

import numpy as np

from .classify import ClassificationSummary
from .network import LevelNetwork, NetworkReport
from .verify import TheoremReport

SCHEMA = "rado-report/1"


def jsonable(obj):
    """Convert report objects into JSON-compatible structures."""
    if isinstance(obj, Fraction):
        return {"num": obj.numerator, "den": obj.denominator}
    if isinstance(obj, enum.Enum):
        return obj.value
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        return x
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, frozenset, set)):
        items = sorted(obj) if isinstance(obj, (set, frozenset)) else obj
        return [jsonable(v) for v in items]
    if isinstance(obj, np.ndarray):
        return jsonable(obj.tolist())
    if isinstance(obj, str) or obj is None:
        return obj
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def classification_doc(s: ClassificationSummary) -> dict:
    return {
        "schema": SCHEMA,
        "kind": "classification",
        "vertex_count": s.field.mesh.vertex_count,
        "mode": s.field.mode.value,
        "N": s.N,
        "s_bd": s.s_bd,
        "Q": jsonable(s.Q),
        "Q_int": jsonable(s.Q_int),
        "Q_bd": jsonable(s.Q_bd),
        "A": jsonable(s.A),
        "V_int": jsonable(s.V_int),
        "V_bd": jsonable(s.V_bd),
        "critical": [
            {"vertex": r.vertex, "locus": r.locus, "valence": r.valence, "kind": r.kind.value,
             "multiplicity": r.multiplicity,
             "boundary_restriction_kind": jsonable(r.boundary_restriction_kind)}
            for r in s.records if r.is_critical
        ],
    }


def network_doc(r: NetworkReport, x: LevelNetwork | None = None) -> dict:
    doc = {"schema": SCHEMA}
    for f in dataclasses.fields(r):
        key = "pass" if f.name == "passed" else f.name
        doc[key] = jsonable(getattr(r, f.name))
    if x is not None:
        doc["nodes"] = [{"vertex": n.vertex, "edge": jsonable(n.edge), "valence": n.valence}
                        for n in x.nodes]
        doc["arcs"] = [[a.start, a.end] for a in x.arcs]
        doc["loops"] = len(x.loops)
    return doc


def theorem_doc(r: TheoremReport) -> dict:
    return {
        "theorem": r.theorem,
        "lhs": jsonable(r.lhs),
        "rhs": jsonable(r.rhs),
        "relation": r.relation,
        "pass": bool(r.passed),
        "equality_attained": r.equality_attained,
        "witness": jsonable(r.witness),
        "details": jsonable(r.details),
    }


def reports_doc(entries: list[dict]) -> dict:
    return {"schema": SCHEMA, "kind": "theorem-reports", "reports": entries,
            "pass": all(e["pass"] for e in entries)}


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=False) + "\n"
