"""JSON encodings for categories, cellular stratified spaces, Delta-sets,
homology, arrangements, face posets and graphs."""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .acyclic import FiniteAcyclicCategory, GradedPoset, Morphism
from .arrangements import AffineForm, Arrangement, FacePoset
from .complexes import DeltaSet, HomologyResult, make_deltaset
from .errors import InputError, InvalidStructure
from .graphconf import Edge, Graph
from .strata import TotallyNormalCSS


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def loads(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc}") from None


def _get(d: dict, key: str, where: str):
    if not isinstance(d, dict) or key not in d:
        raise InputError(f"{where}: missing key {key!r}")
    return d[key]


def _str(v, where: str) -> str:
    if not isinstance(v, str):
        raise InputError(f"{where}: expected a string id, got {v!r}")
    return v


# -- categories / CSS --------------------------------------------------------


def category_to_json(c: FiniteAcyclicCategory, dim: dict[str, int] | None = None) -> dict:
    objects = []
    for x in c.objects:
        entry: dict[str, Any] = {"id": x}
        if dim is not None:
            entry["dim"] = dim[x]
        objects.append(entry)
    return {
        "objects": objects,
        "morphisms": [{"id": m.id, "src": m.src, "dst": m.dst} for m in c.morphisms],
        "compose": [{"g": g, "f": f, "gf": gf} for (g, f), gf in sorted(c.compose.items())],
    }


def category_from_json(data: dict, require_dim: bool = False) -> tuple[FiniteAcyclicCategory, dict[str, int]]:
    objs = _get(data, "objects", "category")
    morphs = data.get("morphisms", []) if isinstance(data, dict) else []
    comp = data.get("compose", []) if isinstance(data, dict) else []
    if not isinstance(objs, list) or not isinstance(morphs, list) or not isinstance(comp, list):
        raise InputError("category: objects, morphisms and compose must be lists")
    ids, dim = [], {}
    for o in objs:
        oid = _str(_get(o, "id", "object"), "object id")
        ids.append(oid)
        if "dim" in o:
            if not isinstance(o["dim"], int) or isinstance(o["dim"], bool):
                raise InputError(f"object {oid}: dim must be an integer")
            dim[oid] = o["dim"]
        elif require_dim:
            raise InputError(f"object {oid}: missing 'dim'")
    morphisms = tuple(
        Morphism(
            _str(_get(m, "id", "morphism"), "morphism id"),
            _str(_get(m, "src", "morphism"), "src"),
            _str(_get(m, "dst", "morphism"), "dst"),
        )
        for m in morphs
    )
    compose = {}
    for e in comp:
        compose[_str(_get(e, "g", "compose"), "g"), _str(_get(e, "f", "compose"), "f")] = _str(
            _get(e, "gf", "compose"), "gf"
        )
    return FiniteAcyclicCategory(tuple(ids), morphisms, compose), dim


def css_to_json(s: TotallyNormalCSS) -> dict:
    return category_to_json(s.category, dict(s.dim))


def css_from_json(data: dict) -> TotallyNormalCSS:
    cat, dim = category_from_json(data, require_dim=True)
    return TotallyNormalCSS(cat, dim)


# -- Delta-sets and homology -------------------------------------------------


def deltaset_to_json(d: DeltaSet) -> dict:
    return {"cells": [list(layer) for layer in d.cells], "faces": {c: list(f) for c, f in d.faces.items()}}


def deltaset_from_json(data: dict) -> DeltaSet:
    cells = _get(data, "cells", "deltaset")
    faces = data.get("faces", {})
    if not isinstance(cells, list) or not all(isinstance(layer, list) for layer in cells):
        raise InputError("deltaset: 'cells' must be a list of lists")
    if not isinstance(faces, dict):
        raise InputError("deltaset: 'faces' must be an object")
    layers = [[_str(c, "cell id") for c in layer] for layer in cells]
    return make_deltaset(layers, {_str(k, "cell id"): [_str(x, "face id") for x in v] for k, v in faces.items()})


def homology_to_json(h: HomologyResult) -> dict:
    return {"betti": list(h.betti), "torsion": [[str(t) for t in tors] for tors in h.torsion]}


def homology_from_json(data: dict) -> HomologyResult:
    return HomologyResult(
        tuple(int(b) for b in _get(data, "betti", "homology")),
        tuple(tuple(int(t) for t in tors) for tors in _get(data, "torsion", "homology")),
    )


# -- arrangements ------------------------------------------------------------


def _rational(v, where: str) -> Fraction:
    if isinstance(v, bool) or isinstance(v, float):
        raise InputError(f"{where}: rationals must be integers or 'p/q' strings, got {v!r}")
    try:
        return Fraction(v)
    except (ValueError, TypeError, ZeroDivisionError):
        raise InputError(f"{where}: not a rational number: {v!r}") from None


def arrangement_from_json(data: dict) -> Arrangement:
    n = _get(data, "dim", "arrangement")
    if not isinstance(n, int) or n < 1:
        raise InputError("arrangement: 'dim' must be a positive integer")
    forms = []
    for i, f in enumerate(_get(data, "forms", "arrangement")):
        a = _get(f, "a", f"form {i}")
        if not isinstance(a, list) or len(a) != n:
            raise InputError(f"form {i}: 'a' must list {n} coefficients")
        forms.append(AffineForm(tuple(_rational(x, f"form {i}") for x in a), _rational(f.get("c", 0), f"form {i}")))
    try:
        return Arrangement(n, tuple(forms))
    except InvalidStructure as exc:
        raise InputError(f"arrangement: {exc}") from None


def arrangement_to_json(a: Arrangement) -> dict:
    return {"dim": a.dim, "forms": [{"a": [str(x) for x in f.coeffs], "c": str(f.const)} for f in a.forms]}


def face_poset_to_json(fp: FacePoset) -> dict:
    return {
        "order": fp.level,
        "elements": [{"sign": f.label, "dim": f.dim} for f in fp.faces],
        "covers": [list(pair) for pair in fp.poset.covers()],
    }


def graded_poset_to_json(gp: GradedPoset) -> dict:
    return {
        "elements": [{"id": x, "dim": gp.dim[x]} for x in gp.poset.elements],
        "covers": [list(pair) for pair in gp.poset.covers()],
    }


# -- graphs ------------------------------------------------------------------


def graph_from_json(data: dict) -> Graph:
    vertices = [_str(v, "vertex") for v in _get(data, "vertices", "graph")]
    edges = []
    for e in data.get("edges", []):
        ends = _get(e, "ends", "edge")
        if not isinstance(ends, list) or len(ends) != 2:
            raise InputError("edge: 'ends' must list two vertices")
        edges.append(Edge(_str(_get(e, "id", "edge"), "edge id"), _str(ends[0], "end"), _str(ends[1], "end")))
    try:
        return Graph(tuple(vertices), tuple(edges))
    except InvalidStructure as exc:
        raise InputError(f"graph: {exc}") from None


def graph_to_json(g: Graph) -> dict:
    return {"vertices": list(g.vertices), "edges": [{"id": e.id, "ends": [e.tail, e.head]} for e in g.edges]}
