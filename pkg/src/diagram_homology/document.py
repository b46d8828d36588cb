"""JSON documents describing a category, orbits, a labeled space and a map.

Schema::

    {
      "category": {
        "objects": ["d0", "d1"],
        "morphisms": [{"name": "f", "dom": "d0", "cod": "d1"}],
        "composition": [["first", "then", "result"], ...]
      },
      "orbits": [
        {"name": "T2", "sets": {"d0": ["x", "y"], "d1": ["p"]},
         "action": {"f": {"x": "p", "y": "p"}}},
        {"name": "F", "free": "d0"}
      ],
      "space": {
        "vertices": ["v1", "v2"],
        "simplices": [
          {"id": "e", "vertices": ["v1", "v2"], "orbit": "T3",
           "restrictions": {"v2": {"d0": {"a": "x"}, "d1": {"p": "p"}}}}
        ]
      },
      "map": {"vertex_map": {"v1": "v2"}, "components": {"e": {"d0": {...}}}},
      "options": {"coefficients": "isotropy", "subdivisions": 0}
    }

Identity morphisms and their composites are implicit.  A composition
entry ``[g, f, h]`` means ``h`` is "``g`` then ``f``".  Natural
transformations are written as per-object element maps.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

from .dspace import EquivariantSelfMap, LabeledComplex, Simplex, validate_map, validate_space
from .fincat import FinCategory, FinFunctor, NatTrans, identity_name, validate_category
from .orbits import Orbit, OrbitCategory, build_orbit_category, free_orbit, validate_orbit
from .validation import ValidationError


class DocumentError(ValueError):
    """Malformed input: bad JSON or a field of the wrong shape."""

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None, path: str = ""):
        self.line, self.column, self.path = line, column, path
        where = []
        if line is not None:
            where.append(f"line {line}, column {column}")
        if path:
            where.append(path)
        super().__init__(f"{'; '.join(where)}: {message}" if where else message)


@dataclass
class Document:
    category: FinCategory
    orbits: List[Orbit]
    oc: OrbitCategory
    space: LabeledComplex
    map: Optional[EquivariantSelfMap] = None
    options: Dict[str, Any] = field(default_factory=dict)


def _expect(value, kind, path):
    if not isinstance(value, kind):
        want = kind.__name__ if isinstance(kind, type) else "/".join(k.__name__ for k in kind)
        raise DocumentError(f"expected {want}, got {type(value).__name__}", path=path)
    return value


def _key(obj: dict, key: str, kind, path: str, default=None):
    if key not in obj:
        if default is not None:
            return default
        raise DocumentError(f"missing field {key!r}", path=path)
    return _expect(obj[key], kind, f"{path}.{key}")


def _strings(value, path) -> List[str]:
    _expect(value, list, path)
    return [_expect(v, str, f"{path}[{i}]") for i, v in enumerate(value)]


def _elem_maps(value, path) -> Dict[str, Dict[str, str]]:
    _expect(value, dict, path)
    out = {}
    for k, m in value.items():
        _expect(m, dict, f"{path}.{k}")
        out[k] = {a: _expect(b, str, f"{path}.{k}.{a}") for a, b in m.items()}
    return out


def parse_json(text: str) -> dict:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise DocumentError(e.msg, e.lineno, e.colno) from None
    return _expect(data, dict, "$")


def _category(raw: dict) -> FinCategory:
    objects = _strings(_key(raw, "objects", list, "$.category"), "$.category.objects")
    morphisms = []
    for i, m in enumerate(_key(raw, "morphisms", list, "$.category", [])):
        p = f"$.category.morphisms[{i}]"
        _expect(m, dict, p)
        morphisms.append(tuple(_key(m, k, str, p) for k in ("name", "dom", "cod")))
    comp = []
    for i, e in enumerate(_key(raw, "composition", list, "$.category", [])):
        p = f"$.category.composition[{i}]"
        e = _strings(e, p)
        if len(e) != 3:
            raise DocumentError("composition entries are [first, then, result]", path=p)
        comp.append(tuple(e))
    return FinCategory(objects, morphisms, comp, name=raw.get("name", ""))


def _orbit(c: FinCategory, raw: dict, i: int) -> Orbit:
    p = f"$.orbits[{i}]"
    _expect(raw, dict, p)
    name = _key(raw, "name", str, p)
    if "free" in raw:
        d = _key(raw, "free", str, p)
        if d not in c.objects:
            raise ValidationError(f"unknown object {d!r}", f"orbit {name}")
        o = free_orbit(c, d, name)
        return o
    sets_raw = _key(raw, "sets", dict, p)
    sets = {o: _strings(v, f"{p}.sets.{o}") for o, v in sets_raw.items()}
    for o in sets:
        if o not in c.objects:
            raise ValidationError(f"unknown object {o!r}", f"orbit {name}")
    action = _elem_maps(raw.get("action", {}), f"{p}.action")
    for m in action:
        if m not in c.morphism:
            raise ValidationError(f"unknown morphism {m!r}", f"orbit {name}")
    return Orbit(name, FinFunctor(c, sets, action, name=name))


def _nat(oc: OrbitCategory, source: str, target: str, comps, path: str, locus: str) -> NatTrans:
    for t in (source, target):
        if t not in oc.orbit:
            raise ValidationError(f"unknown orbit {t!r}", locus)
    return NatTrans(oc.orbit[source].functor, oc.orbit[target].functor, _elem_maps(comps, path))


def _space(oc: OrbitCategory, raw: dict) -> LabeledComplex:
    p = "$.space"
    vertices = _strings(_key(raw, "vertices", list, p), f"{p}.vertices")
    simplices, restr_raw = [], []
    for i, s in enumerate(_key(raw, "simplices", list, p)):
        q = f"{p}.simplices[{i}]"
        _expect(s, dict, q)
        sid = _key(s, "id", str, q)
        orbit = _key(s, "orbit", str, q)
        if orbit not in oc.orbit:
            raise ValidationError(f"unknown orbit {orbit!r}", f"simplex {sid}")
        simplices.append(Simplex(sid, tuple(_strings(_key(s, "vertices", list, q), f"{q}.vertices")), orbit))
        restr_raw.append((sid, orbit, _key(s, "restrictions", dict, q, {}), f"{q}.restrictions"))
    labels = {s.id: s.orbit for s in simplices}
    restrictions = {}
    for sid, orbit, rs, q in restr_raw:
        for fid, comps in rs.items():
            if fid not in labels:
                raise ValidationError(f"missing face {fid!r}: restriction to an undeclared simplex", f"simplex {sid}")
            restrictions[(sid, fid)] = _nat(oc, orbit, labels[fid], comps, f"{q}.{fid}", f"simplex {sid}")
    return LabeledComplex(oc, vertices, simplices, restrictions)


def _map(x: LabeledComplex, raw: dict) -> EquivariantSelfMap:
    p = "$.map"
    vmap_raw = _key(raw, "vertex_map", dict, p)
    vmap = {k: _expect(v, str, f"{p}.vertex_map.{k}") for k, v in vmap_raw.items()}
    for v in x.vertices:
        if v not in vmap:
            raise ValidationError("vertex map is not total", f"vertex {v}")
        if vmap[v] not in x.vpos:
            raise ValidationError(f"image {vmap[v]!r} is not a vertex", f"vertex {v}")
    f = EquivariantSelfMap(x, vmap, {})
    comps = {}
    for sid, c in _key(raw, "components", dict, p, {}).items():
        if sid not in x.simplex:
            raise ValidationError(f"component for undeclared simplex {sid!r}", "map")
        target = x.label(f.carrier(sid))
        comps[sid] = _nat(x.oc, x.label(sid), target, c, f"{p}.components.{sid}", f"map component {sid}")
    return EquivariantSelfMap(x, vmap, comps)


def build_document(data: dict) -> Document:
    """Construct and validate every section, raising at the first failure.

    Shape errors raise :class:`DocumentError`; semantic failures raise
    :class:`ValidationError` carrying a locus.
    """
    c = _category(_key(data, "category", dict, "$"))
    validate_category(c).raise_for_error()
    orbits = [_orbit(c, o, i) for i, o in enumerate(_key(data, "orbits", list, "$"))]
    for o in orbits:
        validate_orbit(o).raise_for_error()
    oc = build_orbit_category(c, orbits)
    x = _space(oc, _key(data, "space", dict, "$"))
    validate_space(x).raise_for_error()
    f = None
    if data.get("map") is not None:
        f = _map(x, _expect(data["map"], dict, "$.map"))
        validate_map(f).raise_for_error()
    options = dict(_key(data, "options", dict, "$", {}))
    return Document(c, orbits, oc, x, f, options)


def loads(text: str) -> Document:
    return build_document(parse_json(text))


def load(path: str) -> Document:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())


def category_to_json(c: FinCategory) -> dict:
    ids = {identity_name(o) for o in c.objects}
    return {
        "objects": list(c.objects),
        "morphisms": [{"name": m.name, "dom": m.dom, "cod": m.cod} for m in c.morphisms if m.name not in ids],
        "composition": [
            [g, f, h] for (g, f), h in c.table.items() if g not in ids and f not in ids
        ],
    }


def orbit_to_json(o: Orbit) -> dict:
    F = o.functor
    ids = {identity_name(d) for d in F.base.objects}
    return {
        "name": o.name,
        "sets": {d: list(F.sets[d]) for d in F.base.objects},
        "action": {m: dict(a) for m, a in F.action.items() if m not in ids},
    }


def space_to_json(x: LabeledComplex) -> dict:
    simplices = []
    for s in x.simplices:
        entry = {"id": s.id, "vertices": list(s.vertices), "orbit": s.orbit}
        if s.dim > 0:
            entry["restrictions"] = {
                fid: x.oc.nat(x.restriction(s.id, fid)).components for fid in x.facets(s.id)
            }
        simplices.append(entry)
    return {"vertices": list(x.vertices), "simplices": simplices}


def map_to_json(f: EquivariantSelfMap) -> dict:
    x = f.space
    return {
        "vertex_map": {v: f.vertex_map[v] for v in x.vertices},
        "components": {s.id: x.oc.nat(f.component(s.id)).components for s in x.simplices},
    }


def document_to_json(
    oc: OrbitCategory,
    space: LabeledComplex,
    map: Optional[EquivariantSelfMap] = None,
    options: Optional[dict] = None,
) -> dict:
    out = {
        "category": category_to_json(oc.base),
        "orbits": [orbit_to_json(o) for o in oc.orbits],
        "space": space_to_json(space),
    }
    if map is not None:
        out["map"] = map_to_json(map)
    if options:
        out["options"] = dict(options)
    return out


def dumps(data: dict) -> str:
    return json.dumps(data, indent=2, ensure_ascii=False) + "\n"
