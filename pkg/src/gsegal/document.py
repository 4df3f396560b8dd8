"""The JSON input document: schema, parsing, emission and construction of the G-category."""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any

import jsonschema

from .cat import FinCat, Groupoid, inverse_map, validate_category
from .errors import ValidationError
from .gcat import GCategory, trivial_action, validate_gcategory
from .group import FiniteGroup, Subgroup, subgroups, validate_group
from .segal import RelativeGCategory

SCHEMA_VERSION = 1
CHECKS = ("adjunction", "segal", "complete", "ho", "cellularity")
DIAGRAMS = ("classifying", "classification", "discrete_nerve")

_names = {"type": "array", "items": {"type": "string"}}

INPUT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "gsegal input document",
    "type": "object",
    "required": ["schema_version", "group", "category"],
    "additionalProperties": False,
    "properties": {
        "schema_version": {"const": SCHEMA_VERSION},
        "name": {"type": "string"},
        "group": {
            "type": "object",
            "required": ["elements", "mult"],
            "additionalProperties": False,
            "properties": {
                "elements": {**_names, "minItems": 1},
                "mult": {"type": "array", "items": _names},
                "identity": {"type": "string"},
            },
        },
        "subgroups": {"oneOf": [{"const": "all"}, {"type": "array", "items": _names}]},
        "category": {
            "type": "object",
            "required": ["objects", "morphisms", "identities", "composition"],
            "additionalProperties": False,
            "properties": {
                "objects": _names,
                "morphisms": {"type": "array", "items": {
                    "type": "object", "required": ["name", "src", "tgt"], "additionalProperties": False,
                    "properties": {"name": {"type": "string"}, "src": {"type": "string"},
                                   "tgt": {"type": "string"}}}},
                "identities": {"type": "object", "additionalProperties": {"type": "string"}},
                "composition": {"type": "array", "items": {**_names, "minItems": 3, "maxItems": 3}},
            },
        },
        "action": {"type": "array", "items": {
            "type": "object", "required": ["element", "objects", "morphisms"], "additionalProperties": False,
            "properties": {"element": {"type": "string"},
                           "objects": {"type": "object", "additionalProperties": {"type": "string"}},
                           "morphisms": {"type": "object", "additionalProperties": {"type": "string"}}}}},
        "weq": _names,
        "diagram": {"enum": list(DIAGRAMS)},
        "options": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "max_level": {"type": "integer", "minimum": 2},
                "checks": {"type": "array", "items": {"enum": list(CHECKS)}},
            },
        },
    },
}


class ParseError(ValueError):
    pass


@dataclass(frozen=True)
class InputDocument:
    """A schema-valid input, normalized so that equal inputs compare equal."""

    data: dict

    @property
    def name(self) -> str:
        return self.data.get("name", "")

    @property
    def diagram(self) -> str:
        return self.data.get("diagram", "classifying")

    @property
    def options(self) -> dict:
        return self.data.get("options", {})


def _normalize(data: dict) -> dict:
    out = json.loads(json.dumps(data, sort_keys=True))
    cat = out["category"]
    cat["composition"] = sorted(cat["composition"])
    if "weq" in out:
        out["weq"] = sorted(set(out["weq"]))
    if isinstance(out.get("subgroups"), list):
        out["subgroups"] = sorted(sorted(set(h)) for h in out["subgroups"])
    if "action" in out:
        out["action"] = sorted(out["action"], key=lambda a: a["element"])
    return out


def _resolve(table: dict, name: str, what: str) -> int:
    try:
        return table[name]
    except KeyError:
        raise ParseError(f"unknown {what} {name!r}") from None


def _check_references(data: dict) -> None:
    g = data["group"]
    elems = {e: i for i, e in enumerate(g["elements"])}
    if len(elems) != len(g["elements"]):
        raise ParseError("duplicate group element names")
    if len(g["mult"]) != len(elems) or any(len(row) != len(elems) for row in g["mult"]):
        raise ParseError("multiplication table must be square of the group's size")
    for row in g["mult"]:
        for e in row:
            _resolve(elems, e, "group element")
    if "identity" in g:
        _resolve(elems, g["identity"], "group element")
    for h in data.get("subgroups", []) if isinstance(data.get("subgroups"), list) else []:
        for e in h:
            _resolve(elems, e, "group element")
    c = data["category"]
    objs = {x: i for i, x in enumerate(c["objects"])}
    mors = {m["name"]: i for i, m in enumerate(c["morphisms"])}
    if len(objs) != len(c["objects"]) or len(mors) != len(c["morphisms"]):
        raise ParseError("duplicate object or morphism names")
    for m in c["morphisms"]:
        _resolve(objs, m["src"], "object")
        _resolve(objs, m["tgt"], "object")
    for x, f in c["identities"].items():
        _resolve(objs, x, "object")
        _resolve(mors, f, "morphism")
    if set(c["identities"]) != set(objs):
        raise ParseError("every object needs exactly one identity")
    for triple in c["composition"]:
        for f in triple:
            _resolve(mors, f, "morphism")
    for a in data.get("action", []):
        _resolve(elems, a["element"], "group element")
        for x, y in a["objects"].items():
            _resolve(objs, x, "object")
            _resolve(objs, y, "object")
        for f, h in a["morphisms"].items():
            _resolve(mors, f, "morphism")
            _resolve(mors, h, "morphism")
    for f in data.get("weq", []):
        _resolve(mors, f, "morphism")


def parse(text: str | bytes) -> InputDocument:
    """Parse and schema-check a document; malformed input raises :class:`ParseError`."""
    try:
        data = json.loads(text)
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise ParseError(f"not valid JSON: {exc}") from None
    try:
        jsonschema.validate(data, INPUT_SCHEMA)
    except jsonschema.ValidationError as exc:
        path = "/".join(str(p) for p in exc.absolute_path)
        raise ParseError(f"schema violation at '{path}': {exc.message}") from None
    _check_references(data)
    return InputDocument(_normalize(data))


def emit(doc: InputDocument) -> str:
    return json.dumps(doc.data, sort_keys=True, indent=2) + "\n"


@dataclass(frozen=True)
class Built:
    group: FiniteGroup
    category: GCategory
    subgroups: list[Subgroup]
    weq: RelativeGCategory | None


def build(doc: InputDocument) -> Built:
    """Construct and validate the group, category, action and markings.

    Axiom violations raise :class:`ValidationError` with a witness.
    """
    d = doc.data
    g = d["group"]
    elems = g["elements"]
    at = {e: i for i, e in enumerate(elems)}
    table = [[at[e] for e in row] for row in g["mult"]]
    G = validate_group(table, at[g["identity"]] if "identity" in g else None, names=elems)

    c = d["category"]
    objs = {x: i for i, x in enumerate(c["objects"])}
    mors = {m["name"]: i for i, m in enumerate(c["morphisms"])}
    src = [objs[m["src"]] for m in c["morphisms"]]
    tgt = [objs[m["tgt"]] for m in c["morphisms"]]
    ids = [mors[c["identities"][x]] for x in c["objects"]]
    comp = {}
    for f in range(len(mors)):
        comp[(ids[src[f]], f)] = f
        comp[(f, ids[tgt[f]])] = f
    for f, h, k in c["composition"]:
        key = (mors[f], mors[h])
        if comp.setdefault(key, mors[k]) != mors[k]:
            raise ValidationError(f"conflicting composites for {f} then {h}", witness=(f, h))
    C: FinCat = validate_category(c["objects"], [m["name"] for m in c["morphisms"]], src, tgt, ids, comp)
    inv = inverse_map(C)
    if len(inv) == C.n_morphisms:
        C = Groupoid(C.objects, C.morphisms, C.src, C.tgt, C.ids, C.comp,
                     inv=tuple(inv[f] for f in range(C.n_morphisms)))

    action = {}
    for a in d.get("action", []):
        op = tuple(objs[a["objects"].get(x, x)] for x in c["objects"])
        mp = tuple(mors[a["morphisms"].get(m["name"], m["name"])] for m in c["morphisms"])
        action[at[a["element"]]] = (op, mp)
    GC = validate_gcategory(C, G, action) if action else trivial_action(C, G)

    subs = subgroups(G)
    chosen = d.get("subgroups", "all")
    if chosen != "all":
        wanted = []
        for names in chosen:
            H = Subgroup(G, tuple(sorted(at[e] for e in names)))
            H.validate()
            wanted.append(H)
        subs = wanted
    weq = None
    if "weq" in d:
        weq = RelativeGCategory(GC, frozenset(mors[f] for f in d["weq"])).validate()
    return Built(G, GC, subs, weq)


def _label(x: Any) -> str:
    return x if isinstance(x, str) else str(x)


def from_gcategory(GC: GCategory, name: str = "", diagram: str = "classifying",
                   options: dict | None = None) -> InputDocument:
    """The document describing ``GC``; the action is given on generators."""
    G, C = GC.group, GC.base
    elems = [_label(e) for e in G.names]
    objs = [_label(x) for x in C.objects]
    mors = [_label(f) for f in C.morphisms]
    ids = set(C.ids)
    data = {
        "schema_version": SCHEMA_VERSION,
        "name": name,
        "group": {"elements": elems, "mult": [[elems[G.mult[a][b]] for b in range(G.order)] for a in range(G.order)],
                  "identity": elems[G.identity]},
        "category": {
            "objects": objs,
            "morphisms": [{"name": mors[f], "src": objs[C.src[f]], "tgt": objs[C.tgt[f]]}
                          for f in range(C.n_morphisms)],
            "identities": {objs[x]: mors[C.ids[x]] for x in range(C.n_objects)},
            "composition": [[mors[f], mors[g], mors[h]] for (f, g), h in C.comp.items()
                            if f not in ids and g not in ids],
        },
        "diagram": diagram,
    }
    if not GC.is_trivial_action:
        data["action"] = [{"element": elems[g],
                           "objects": {objs[x]: objs[GC.obj_act[g][x]] for x in range(C.n_objects)},
                           "morphisms": {mors[f]: mors[GC.mor_act[g][f]] for f in range(C.n_morphisms)}}
                          for g in G.generators()]
    if options:
        data["options"] = options
    _check_references(data)
    return InputDocument(_normalize(data))

