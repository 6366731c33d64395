"""Loading a category presentation from a JSON document.

Layout::

    {
      "format": 1,
      "name": "quiver",
      "field": "Q",
      "objects": [{"name": "a", "degree": 0}, {"name": "b", "degree": 1}],
      "homs": [{"source": "a", "target": "a", "labels": ["1a"]},
               {"source": "a", "target": "b", "labels": ["u"]}, ...],
      "identities": {"a": "1a", "b": "1b"},
      "compose": [{"first": "u", "then": "1b", "result": {"u": 1}}, ...],
      "plus": ["u"],
      "minus": [],
      "idempotents": {"a": [{"1a": 1}]}
    }

Labels are global.  Composites with an identity are filled in automatically;
any other composite not listed is zero.  ``plus`` and ``minus`` list labels
(or sparse vectors ``{label: scalar}``) spanning the designated subspaces;
identities are always included.  Scalars are integers or strings "p/q".
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field

import jsonschema

from .lincat import LinCat
from .linalg import Field, Subspace
from .reedy import ReedyStructure


class SpecError(ValueError):
    """The document is malformed or refers to unknown labels."""


_SCALAR = {"oneOf": [{"type": "integer"}, {"type": "string", "pattern": r"^-?\d+(/\d+)?$"}]}
_VECTOR = {"type": "object", "additionalProperties": _SCALAR}

SCHEMA = {
    "type": "object",
    "required": ["format", "field", "objects", "homs", "identities"],
    "properties": {
        "format": {"const": 1},
        "name": {"type": "string"},
        "field": {"type": "string", "pattern": r"^(Q|Fp:\d+)$"},
        "objects": {"type": "array", "minItems": 1, "items": {
            "type": "object", "required": ["name", "degree"],
            "properties": {"name": {"type": "string"}, "degree": {"type": "integer", "minimum": 0},
                           "carrier": {}},
            "additionalProperties": False}},
        "homs": {"type": "array", "items": {
            "type": "object", "required": ["source", "target", "labels"],
            "properties": {"source": {"type": "string"}, "target": {"type": "string"},
                           "labels": {"type": "array", "items": {"type": "string"}}},
            "additionalProperties": False}},
        "identities": {"type": "object", "additionalProperties": {"type": "string"}},
        "compose": {"type": "array", "items": {
            "type": "object", "required": ["first", "then", "result"],
            "properties": {"first": {"type": "string"}, "then": {"type": "string"}, "result": _VECTOR},
            "additionalProperties": False}},
        "plus": {"type": "array", "items": {"oneOf": [{"type": "string"}, _VECTOR]}},
        "minus": {"type": "array", "items": {"oneOf": [{"type": "string"}, _VECTOR]}},
        "idempotents": {"type": "object", "additionalProperties": {"type": "array", "items": _VECTOR}},
    },
    "additionalProperties": False,
}


@dataclass
class LoadedSpec:
    name: str
    field: Field
    cat: LinCat
    reedy: ReedyStructure
    idempotents: dict = dc_field(default_factory=dict)   # object -> list of vectors in hom(x, x)
    carriers: dict = dc_field(default_factory=dict)


def _scalar(F: Field, s):
    if isinstance(s, int):
        return F(s)
    num, _, den = s.partition("/")
    a, b = F(int(num)), F(int(den or 1))
    if not b:
        raise SpecError(f"zero denominator in {s!r}")
    return a * F.inv(b)


def load_spec(doc: dict, field_override: Field | None = None) -> LoadedSpec:
    try:
        jsonschema.validate(doc, SCHEMA)
    except jsonschema.ValidationError as exc:
        raise SpecError(f"schema: {exc.message} at {'/'.join(str(p) for p in exc.absolute_path)}") from exc
    F = field_override or Field.parse(doc["field"])
    objs = [o["name"] for o in doc["objects"]]
    if len(set(objs)) != len(objs):
        raise SpecError("duplicate object names")
    degree = {o["name"]: o["degree"] for o in doc["objects"]}
    labels, where = {}, {}
    for h in doc["homs"]:
        s, t = h["source"], h["target"]
        if s not in degree or t not in degree:
            raise SpecError(f"hom block {s!r} -> {t!r} uses an unknown object")
        if (s, t) in labels:
            raise SpecError(f"hom block {s!r} -> {t!r} listed twice")
        labels[(s, t)] = list(h["labels"])
        for k, l in enumerate(h["labels"]):
            if l in where:
                raise SpecError(f"label {l!r} used twice")
            where[l] = (s, t, k)
    ids = {}
    for x in objs:
        l = doc["identities"].get(x)
        if l is None or l not in where or where[l][:2] != (x, x):
            raise SpecError(f"identity of {x!r} missing or not an endomorphism label")
        ids[x] = l
    id_labels = set(ids.values())
    comp = {}
    for c in doc.get("compose", []):
        f, g = c["first"], c["then"]
        if f not in where or g not in where:
            raise SpecError(f"composition {g!r} o {f!r} uses an unknown label")
        (x, y, i), (y2, z, j) = where[f], where[g]
        if y != y2:
            raise SpecError(f"{g!r} o {f!r} is not composable")
        vec = {}
        for lab, s in c["result"].items():
            if lab not in where or where[lab][:2] != (x, z):
                raise SpecError(f"result label {lab!r} of {g!r} o {f!r} is not in hom({x}, {z})")
            v = _scalar(F, s)
            if v:
                vec[where[lab][2]] = v
        comp[(x, y, z, j, i)] = vec

    def structure(x, y, z):
        ly, lz = labels.get((x, y), []), labels.get((y, z), [])
        T = []
        for j, g in enumerate(lz):
            row = []
            for i, f in enumerate(ly):
                if g in id_labels:
                    row.append({i: F.one})
                elif f in id_labels:
                    row.append({j: F.one})
                else:
                    row.append(dict(comp.get((x, y, z, j, i), {})))
            T.append(row)
        return T

    cat = LinCat(F, objs, labels, structure, {x: {where[ids[x]][2]: F.one} for x in objs},
                 name=doc.get("name", "spec"))
    problems = cat.check_axioms()
    if problems:
        raise SpecError(f"composition table is not a category: {problems[0]}")

    def subspaces(items):
        gens = {(x, y): [] for x in objs for y in objs}
        for x in objs:
            gens[(x, x)].append(cat.identity_vec(x))
        for it in items:
            vec = {it: 1} if isinstance(it, str) else it
            blocks = {where[l][:2] for l in vec if l in where}
            if len(blocks) != 1 or any(l not in where for l in vec):
                raise SpecError(f"designation {it!r} must use labels of one hom block")
            (s, t), = blocks
            v = [F.zero] * cat.dim(s, t)
            for l, c in vec.items():
                v[where[l][2]] = _scalar(F, c)
            gens[(s, t)].append(v)
        return {k: Subspace(F, cat.dim(*k), g) for k, g in gens.items()}

    R = ReedyStructure(cat, degree, subspaces(doc.get("plus", [])), subspaces(doc.get("minus", [])),
                       name=doc.get("name", "spec"))
    idem = {}
    for x, vecs in doc.get("idempotents", {}).items():
        if x not in degree:
            raise SpecError(f"idempotents for unknown object {x!r}")
        out = []
        for vec in vecs:
            v = [F.zero] * cat.dim(x, x)
            for l, c in vec.items():
                if l not in where or where[l][:2] != (x, x):
                    raise SpecError(f"idempotent label {l!r} is not an endomorphism of {x!r}")
                v[where[l][2]] = _scalar(F, c)
            out.append(v)
        idem[x] = out
    carriers = {o["name"]: o["carrier"] for o in doc["objects"] if "carrier" in o}
    return LoadedSpec(doc.get("name", "spec"), F, cat, R, idem, carriers)


def load_spec_file(path: str, field_override: Field | None = None) -> LoadedSpec:
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise SpecError(f"{path}: not valid JSON ({exc.msg} at line {exc.lineno})") from exc
    return load_spec(doc, field_override)
