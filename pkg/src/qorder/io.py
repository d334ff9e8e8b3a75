"""JSON file formats for bases, structures, matrices and witnesses.

All formats are plain JSON validated against the schemas below.  Elements,
objects and types are referred to by name.  Serialization is canonical:
fixed key order, two-space indent, scalar lists on one line, matrix rows one
per line, trailing newline.

``*.quant``   a base quantaloid
``*.struct``  an enriched structure; ``hom[i][j]`` is the arrow from object j to object i
``*.mat``     a matrix between two structures; rows are codomain objects
``*.witness`` isomorphism, equivalence, splitting, completion and map witnesses

A base is given as a fixture reference (``q2``, ``q3``, ``p2``, ``n3``,
``trop:N``, ``idm:<ref>``), a path to a ``.quant`` file (relative to the
referring file), ``{"idm": <base>}``, or an inline quantaloid object.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

import jsonschema

from .errors import InputError
from .fixtures import FIXTURES, get_fixture, trop
from .lattice import FiniteLattice
from .matrix import QMatrix, TypedSet
from .quantaloid import IdmQuantaloid, Quantaloid, Splitting, build_idm, validate_quantaloid
from .structures import EnrichedStructure, ObjectMap, SemiDistributor

_NAME = {"type": "string", "minLength": 1}
_NAMES = {"type": "array", "items": _NAME}
_MATRIX = {"type": "array", "items": _NAMES}

QUANT_SCHEMA: dict[str, Any] = {
    "type": "object",
    "required": ["objects", "homs", "compose", "identity"],
    "properties": {
        "format": {"const": "qorder.quant/1"},
        "name": {"type": "string"},
        "objects": {"type": "array", "items": _NAME, "minItems": 1},
        "homs": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["src", "dst", "elements", "order"],
                "properties": {
                    "src": _NAME,
                    "dst": _NAME,
                    "elements": {"type": "array", "items": _NAME, "minItems": 1},
                    "order": {"type": "array", "items": {"type": "array", "items": _NAME, "minItems": 2, "maxItems": 2}},
                },
                "additionalProperties": False,
            },
        },
        "compose": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["objects", "table"],
                "properties": {
                    "objects": {"type": "array", "items": _NAME, "minItems": 3, "maxItems": 3},
                    "table": _MATRIX,
                },
                "additionalProperties": False,
            },
        },
        "identity": {"type": "object", "additionalProperties": _NAME},
    },
    "additionalProperties": False,
}

_BASE_REF = {"anyOf": [_NAME, {"type": "object"}]}
_STRUCT_REF = {"anyOf": [_NAME, {"type": "object"}]}

STRUCT_SCHEMA: dict[str, Any] = {
    "type": "object",
    "required": ["base", "objects", "hom"],
    "properties": {
        "format": {"const": "qorder.struct/1"},
        "label": {"type": "string"},
        "base": _BASE_REF,
        "objects": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["name", "type"],
                "properties": {"name": _NAME, "type": _NAME},
                "additionalProperties": False,
            },
        },
        "hom": _MATRIX,
    },
    "additionalProperties": False,
}

MAT_SCHEMA: dict[str, Any] = {
    "type": "object",
    "required": ["dom", "cod", "matrix"],
    "properties": {
        "format": {"const": "qorder.mat/1"},
        "dom": _STRUCT_REF,
        "cod": _STRUCT_REF,
        "matrix": _MATRIX,
    },
    "additionalProperties": False,
}

WITNESS_SCHEMA: dict[str, Any] = {
    "type": "object",
    "required": ["format", "kind"],
    "properties": {
        "format": {"const": "qorder.witness/1"},
        "kind": {"enum": ["iso", "equivalence", "splitting", "completion", "object-map"]},
    },
}


# ---------------------------------------------------------------- reading


def _load_json(path: Path) -> Any:
    try:
        text = path.read_text()
    except OSError as e:
        raise InputError(f"{path}: cannot read ({e.strerror})") from None
    return loads(text, str(path))


def loads(text: str, source: str = "<input>") -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"{source}:{e.lineno}:{e.colno}: {e.msg}") from None


def _validate(data: Any, schema: dict, source: str) -> None:
    try:
        jsonschema.validate(data, schema)
    except jsonschema.ValidationError as e:
        where = "/".join(str(p) for p in e.absolute_path) or "<root>"
        raise InputError(f"{source}: at {where}: {e.message}") from None


_PARSED: dict[str, Quantaloid] = {}


def quant_from_data(data: dict, source: str = "<input>", check: bool = True) -> Quantaloid:
    """Parse an inline base; with ``check`` the quantaloid axioms must hold.

    Identical definitions parse to the same object, so structures read from
    different files can still be compared and composed.
    """
    key = json.dumps(data, sort_keys=True)
    if check and key in _PARSED:
        return _PARSED[key]
    _validate(data, QUANT_SCHEMA, source)
    objects = data["objects"]
    idx = {o: i for i, o in enumerate(objects)}
    if len(idx) != len(objects):
        raise InputError(f"{source}: duplicate object names")

    def obj(name: str) -> int:
        if name not in idx:
            raise InputError(f"{source}: unknown object {name!r}")
        return idx[name]

    homs = {}
    for h in data["homs"]:
        key = (obj(h["src"]), obj(h["dst"]))
        if key in homs:
            raise InputError(f"{source}: hom {h['src']} -> {h['dst']} given twice")
        try:
            homs[key] = FiniteLattice.from_relation(h["elements"], [tuple(p) for p in h["order"]])
        except InputError as e:
            raise InputError(f"{source}: hom {h['src']} -> {h['dst']}: {e}") from None
    for x in range(len(objects)):
        for y in range(len(objects)):
            if (x, y) not in homs:
                raise InputError(f"{source}: missing hom {objects[x]} -> {objects[y]}")
    comp = {}
    for c in data["compose"]:
        x, y, z = (obj(o) for o in c["objects"])
        Lf, Lg, Lh = homs[x, y], homs[y, z], homs[x, z]
        rows = c["table"]
        if len(rows) != len(Lg) or any(len(r) != len(Lf) for r in rows):
            raise InputError(f"{source}: compose table {c['objects']} must be {len(Lg)} x {len(Lf)}")
        try:
            comp[x, y, z] = [[Lh.index(v) for v in r] for r in rows]
        except InputError as e:
            raise InputError(f"{source}: compose table {c['objects']}: {e}") from None
    ids = data["identity"]
    try:
        identity = [homs[i, i].index(ids[o]) for i, o in enumerate(objects)]
    except KeyError as e:
        raise InputError(f"{source}: no identity given for object {e.args[0]!r}") from None
    Q = Quantaloid(objects, homs, comp, identity, name=data.get("name") or Path(source).stem)
    if check:
        report = validate_quantaloid(Q)
        if not report.ok:
            raise InputError(f"{source}: not a quantaloid: " + "; ".join(report.lines()[:5]))
        _PARSED[key] = Q
    return Q


def resolve_base(ref: Any, relative_to: Path | None = None, source: str = "<input>") -> Quantaloid:
    if isinstance(ref, dict):
        if set(ref) == {"idm"}:
            return build_idm(resolve_base(ref["idm"], relative_to, source))
        return quant_from_data(ref, source)
    ref = str(ref)
    if ref.startswith("idm:"):
        return build_idm(resolve_base(ref[4:], relative_to, source))
    if ref in FIXTURES or ref.startswith("trop:"):
        return get_fixture(ref)
    path = Path(ref)
    if relative_to is not None and not path.is_absolute():
        path = relative_to / path
    if not path.exists():
        raise InputError(f"{source}: unknown base {ref!r} (not a fixture, no such file)")
    return load_quant(path)


def load_quant(path: str | Path, check: bool = True) -> Quantaloid:
    path = Path(path)
    data = _load_json(path)
    if isinstance(data, str):
        return resolve_base(data, path.parent, str(path))
    return quant_from_data(data, str(path), check)


def struct_from_data(data: Any, relative_to: Path | None = None, source: str = "<input>") -> EnrichedStructure:
    if isinstance(data, str):
        path = Path(data)
        if relative_to is not None and not path.is_absolute():
            path = relative_to / path
        return load_struct(path)
    _validate(data, STRUCT_SCHEMA, source)
    base = resolve_base(data["base"], relative_to, source)
    try:
        objs = [(o["name"], o["type"]) for o in data["objects"]]
        return EnrichedStructure.from_names(base, objs, data["hom"], data.get("label", ""))
    except InputError as e:
        raise InputError(f"{source}: {e}") from None


def load_struct(path: str | Path) -> EnrichedStructure:
    path = Path(path)
    return struct_from_data(_load_json(path), path.parent, str(path))


def mat_from_data(data: dict, relative_to: Path | None = None, source: str = "<input>") -> SemiDistributor:
    _validate(data, MAT_SCHEMA, source)
    dom = struct_from_data(data["dom"], relative_to, source)
    cod = struct_from_data(data["cod"], relative_to, source)
    if dom.base is not cod.base:
        raise InputError(f"{source}: domain and codomain live over different bases")
    try:
        return SemiDistributor.from_names(dom, cod, data["matrix"])
    except InputError as e:
        raise InputError(f"{source}: {e}") from None


def load_mat(path: str | Path) -> SemiDistributor:
    path = Path(path)
    return mat_from_data(_load_json(path), path.parent, str(path))


def load_witness(path: str | Path) -> dict:
    path = Path(path)
    data = _load_json(path)
    _validate(data, WITNESS_SCHEMA, str(path))
    return data


def object_map_from_data(data: dict, dom: EnrichedStructure, cod: EnrichedStructure, source: str) -> ObjectMap:
    m = data.get("map")
    if not isinstance(m, dict):
        raise InputError(f"{source}: object map needs a 'map' object")
    missing = [n for n in dom.obs.names if n not in m]
    if missing:
        raise InputError(f"{source}: object map misses {missing}")
    return ObjectMap.from_names(dom, cod, m)


# ---------------------------------------------------------------- writing


def base_ref(base: Quantaloid) -> Any:
    """Fixture reference when ``base`` is a fixture, otherwise an inline definition."""
    if isinstance(base, IdmQuantaloid):
        inner = base_ref(base.base)
        return f"idm:{inner}" if isinstance(inner, str) else {"idm": inner}
    for name, make in FIXTURES.items():
        if make() is base:
            return name
    if base.name.startswith("trop:"):
        try:
            if trop(int(base.name[5:])) is base:
                return base.name
        except ValueError:
            pass
    return quant_to_data(base)


def quant_to_data(Q: Quantaloid) -> dict:
    objs = list(Q.objects)
    homs, comps = [], []
    n = Q.n_objects
    for x in range(n):
        for y in range(n):
            L = Q.hom(x, y)
            order = [
                [L.name(a), L.name(b)] for a in L.carrier for b in L.carrier if a != b and L.leq(a, b)
            ]
            homs.append({"src": objs[x], "dst": objs[y], "elements": [L.name(a) for a in L.carrier], "order": order})
    for x in range(n):
        for y in range(n):
            for z in range(n):
                Lxz = Q.hom(x, z)
                table = [[Lxz.name(v) for v in row] for row in Q.comp_table(x, y, z)]
                comps.append({"objects": [objs[x], objs[y], objs[z]], "table": table})
    return {
        "format": "qorder.quant/1",
        "name": Q.name,
        "objects": objs,
        "homs": homs,
        "compose": comps,
        "identity": {objs[x]: Q.hom(x, x).name(Q.identity(x)) for x in range(n)},
    }


def struct_to_data(S: EnrichedStructure) -> dict:
    out: dict[str, Any] = {"format": "qorder.struct/1"}
    if S.label:
        out["label"] = S.label
    out["base"] = base_ref(S.base)
    out["objects"] = [{"name": n, "type": S.base.objects[t]} for n, t in zip(S.obs.names, S.obs.types)]
    out["hom"] = S.hom.names()
    return out


def mat_to_data(phi: SemiDistributor) -> dict:
    return {
        "format": "qorder.mat/1",
        "dom": struct_to_data(phi.dom),
        "cod": struct_to_data(phi.cod),
        "matrix": phi.mat.names(),
    }


def object_map_to_data(F: ObjectMap) -> dict:
    return {n: F.cod.obs.names[b] for n, b in zip(F.dom.obs.names, F.map)}


def splitting_to_data(base: Quantaloid, names: list[str], splittings: list[Splitting]) -> dict:
    rows = []
    for n, s in zip(names, splittings):
        x, y = s.monad.src, s.obj
        rows.append(
            {
                "object": n,
                "monad": base.arrow_name(s.monad),
                "split_at": base.objects[y],
                "f": base.hom(x, y).name(s.f),
                "u": base.hom(y, x).name(s.u),
            }
        )
    return {"format": "qorder.witness/1", "kind": "splitting", "base": base_ref(base), "splittings": rows}


def _is_scalar(v: Any) -> bool:
    return not isinstance(v, (list, dict))


def dumps(data: Any, indent: int = 0) -> str:
    """Canonical JSON text (without the trailing newline)."""
    pad, inner = " " * indent, " " * (indent + 2)
    if isinstance(data, dict):
        if not data:
            return "{}"
        if all(_is_scalar(v) for v in data.values()):
            flat = "{" + ", ".join(f"{json.dumps(k)}: {json.dumps(v)}" for k, v in data.items()) + "}"
            if len(flat) <= 80:
                return flat
        items = [f"{inner}{json.dumps(k)}: {dumps(v, indent + 2)}" for k, v in data.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(data, list):
        if all(_is_scalar(v) for v in data):
            return "[" + ", ".join(json.dumps(v) for v in data) + "]"
        items = [f"{inner}{dumps(v, indent + 2)}" for v in data]
        return "[\n" + ",\n".join(items) + "\n" + pad + "]"
    return json.dumps(data)


def write_json(data: Any, path: str | Path | None = None) -> str:
    text = dumps(data) + "\n"
    if path is not None:
        Path(path).write_text(text)
    return text
