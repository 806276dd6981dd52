"""JSON documents for triples, class reports, empirical CFs and verdict tables.

A triple document looks like

    {"shift": 0.0, "gauss_var": 1.0,
     "measure": {"type": "discrete", "atoms": [{"x": 2.0, "mass": 1.0}]}}

with measure types discrete, stable_mixture, j_transformed (alpha, seed),
i_transformed (seed) and sum (terms). Leading lines starting with '#' are
treated as a header and skipped when reading.
"""

from __future__ import annotations

import json
import math

from .errors import InvalidMeasure, MalformedDocument
from .measures import (Discrete, ITransformed, JTransformed, LevyTriple,
                       StableMixture, SumMeasure)

__all__ = [
    "measure_to_doc",
    "measure_from_doc",
    "triple_to_doc",
    "triple_from_doc",
    "dumps",
    "loads",
    "class_report_to_doc",
    "ecf_to_doc",
    "verdict_to_doc",
]


def measure_to_doc(m):
    if isinstance(m, Discrete):
        return {"type": "discrete", "atoms": [{"x": x, "mass": w} for x, w in m.atoms]}
    if isinstance(m, StableMixture):
        return {"type": "stable_mixture",
                "atoms": [{"direction": d, "z": z, "weight": w} for d, z, w in m.atoms]}
    if isinstance(m, JTransformed):
        return {"type": "j_transformed", "alpha": m.alpha, "seed": measure_to_doc(m.seed)}
    if isinstance(m, ITransformed):
        return {"type": "i_transformed", "seed": measure_to_doc(m.seed)}
    if isinstance(m, SumMeasure):
        return {"type": "sum", "terms": [measure_to_doc(t) for t in m.terms]}
    raise MalformedDocument(f"{type(m).__name__} has no document form")


def _fields(doc, required, where):
    if not isinstance(doc, dict):
        raise MalformedDocument(f"{where}: expected an object")
    missing = [k for k in required if k not in doc]
    extra = [k for k in doc if k not in required]
    if missing:
        raise MalformedDocument(f"{where}: missing field(s) {', '.join(missing)}")
    if extra:
        raise MalformedDocument(f"{where}: unknown field(s) {', '.join(extra)}")


def _num(v, where):
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise MalformedDocument(f"{where}: expected a number, got {v!r}")
    return float(v)


def _list(v, where):
    if not isinstance(v, list):
        raise MalformedDocument(f"{where}: expected a list")
    return v


def measure_from_doc(doc, where="measure"):
    if not isinstance(doc, dict) or "type" not in doc:
        raise MalformedDocument(f"{where}: expected an object with a 'type' field")
    kind = doc["type"]
    if kind == "discrete":
        _fields(doc, ("type", "atoms"), where)
        atoms = []
        for i, a in enumerate(_list(doc["atoms"], where + ".atoms")):
            w = f"{where}.atoms[{i}]"
            _fields(a, ("x", "mass"), w)
            atoms.append((_num(a["x"], w + ".x"), _num(a["mass"], w + ".mass")))
        return Discrete(tuple(atoms))
    if kind == "stable_mixture":
        _fields(doc, ("type", "atoms"), where)
        atoms = []
        for i, a in enumerate(_list(doc["atoms"], where + ".atoms")):
            w = f"{where}.atoms[{i}]"
            _fields(a, ("direction", "z", "weight"), w)
            d = a["direction"]
            if d not in (1, -1) or isinstance(d, bool):
                raise InvalidMeasure(f"{w}.direction must be +1 or -1")
            atoms.append((int(d), _num(a["z"], w + ".z"), _num(a["weight"], w + ".weight")))
        return StableMixture(tuple(atoms))
    if kind == "j_transformed":
        _fields(doc, ("type", "alpha", "seed"), where)
        return JTransformed(measure_from_doc(doc["seed"], where + ".seed"),
                            _num(doc["alpha"], where + ".alpha"))
    if kind == "i_transformed":
        _fields(doc, ("type", "seed"), where)
        return ITransformed(measure_from_doc(doc["seed"], where + ".seed"))
    if kind == "sum":
        _fields(doc, ("type", "terms"), where)
        terms = [measure_from_doc(t, f"{where}.terms[{i}]")
                 for i, t in enumerate(_list(doc["terms"], where + ".terms"))]
        return SumMeasure(tuple(terms))
    raise MalformedDocument(f"{where}: unknown measure type {kind!r}")


def triple_to_doc(t):
    return {"shift": t.shift, "gauss_var": t.gauss_var, "measure": measure_to_doc(t.measure)}


def triple_from_doc(doc):
    _fields(doc, ("shift", "gauss_var", "measure"), "document")
    shift = _num(doc["shift"], "shift")
    var = _num(doc["gauss_var"], "gauss_var")
    if not (math.isfinite(shift) and math.isfinite(var)):
        raise InvalidMeasure("shift and gauss_var must be finite")
    return LevyTriple(shift, var, measure_from_doc(doc["measure"]))


def dumps(doc, header=None):
    text = json.dumps(doc, indent=2, allow_nan=False) + "\n"
    return (header + text) if header else text


def loads(text):
    lines = text.splitlines()
    while lines and lines[0].lstrip().startswith("#"):
        lines.pop(0)
    try:
        return json.loads("\n".join(lines))
    except json.JSONDecodeError as exc:
        raise MalformedDocument(f"not a valid JSON document: {exc}") from exc


def class_report_to_doc(rep, completely_s=None):
    return {
        "order": rep.max_verified_order,
        "max_order": rep.max_order,
        "diagnostics": [
            {"order": d.order, "passed": d.passed, "worst_violation": d.worst_violation,
             "kind": d.kind, "flagged_radii": list(d.flagged_radii)}
            for d in rep.diagnostics
        ],
        "completely_s": completely_s if completely_s is not None else rep.completely_s,
    }


def ecf_to_doc(ecf):
    return {
        "grid": [float(y) for y in ecf.grid],
        "re": [float(v.real) for v in ecf.values],
        "im": [float(v.imag) for v in ecf.values],
        "stderr": [float(s) for s in ecf.stderr],
    }


def verdict_to_doc(table, c_rows=()):
    return {
        "psi_s": {
            "tol": table.tol,
            "verdict": table.verdict,
            "rows": [{"t": r.t, "numeric": r.numeric, "printed": r.printed,
                      "derived": r.derived, "err_printed": r.err_printed,
                      "err_derived": r.err_derived} for r in table.rows],
        },
        "psi_c": [dict(zip(("t", "numeric", "printed", "err"), row)) for row in c_rows],
    }
