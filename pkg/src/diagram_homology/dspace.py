"""Triangulated diagrams as orbit-labeled simplicial complexes.

The colimit space is an ordered simplicial complex.  Each simplex carries
the orbit lying over its interior, and each facet inclusion carries a map
of orbits from the simplex's label to the facet's label.  Faces are
indexed by the position of the dropped vertex; the boundary sign of the
``i``-th face is ``(-1)**i``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from .fincat import NatTrans, compose_nat, enumerate_nat_trans
from .linalg import IntMatrix
from .orbits import OMorphism, Orbit, OrbitCategory, UDVector, euler_unit
from .validation import ValidationError, ValidationReport, report_from

MapLike = Union[NatTrans, OMorphism]


@dataclass(frozen=True)
class Simplex:
    id: str
    vertices: Tuple[str, ...]
    orbit: str

    @property
    def dim(self) -> int:
        return len(self.vertices) - 1


class LabeledComplex:
    """An ordered simplicial complex whose simplices are labeled by orbits.

    ``restrictions`` maps ``(simplex id, facet id)`` to the orbit map from
    the simplex's label to the facet's label, given either as a natural
    transformation or as an :class:`OMorphism` of ``oc``.
    """

    def __init__(
        self,
        oc: OrbitCategory,
        vertices: Sequence[str],
        simplices: Iterable[Simplex],
        restrictions: Optional[Mapping[Tuple[str, str], MapLike]] = None,
    ):
        self.oc = oc
        self.vertices: Tuple[str, ...] = tuple(vertices)
        self.simplices: Tuple[Simplex, ...] = tuple(simplices)
        self.restrictions: Dict[Tuple[str, str], MapLike] = dict(restrictions or {})
        self.vpos: Dict[str, int] = {v: i for i, v in enumerate(self.vertices)}
        self.simplex: Dict[str, Simplex] = {s.id: s for s in self.simplices}
        self.by_vertices: Dict[Tuple[str, ...], str] = {s.vertices: s.id for s in self.simplices}
        top = max((s.dim for s in self.simplices), default=-1)
        self.dims: List[List[str]] = [[] for _ in range(top + 1)]
        for s in self.simplices:
            if s.dim >= 0:
                self.dims[s.dim].append(s.id)
        self._resolved: Dict[Tuple[str, str], OMorphism] = {}
        self._face_cache: Dict[Tuple[str, str], OMorphism] = {}

    @property
    def dim(self) -> int:
        return len(self.dims) - 1

    def cells(self, n: int) -> List[str]:
        return self.dims[n] if 0 <= n < len(self.dims) else []

    def label(self, sid: str) -> str:
        return self.simplex[sid].orbit

    def facets(self, sid: str) -> List[str]:
        """Facet ids of ``sid``; entry ``i`` drops vertex ``i``."""
        vs = self.simplex[sid].vertices
        if len(vs) == 1:
            return []
        out = []
        for i in range(len(vs)):
            face = vs[:i] + vs[i + 1:]
            fid = self.by_vertices.get(face)
            if fid is None:
                raise ValidationError(f"missing face {list(face)}", f"simplex {sid}")
            out.append(fid)
        return out

    def restriction(self, sid: str, fid: str) -> OMorphism:
        key = (sid, fid)
        hit = self._resolved.get(key)
        if hit is not None:
            return hit
        raw = self.restrictions.get(key)
        locus = f"simplex {sid}, facet {fid}"
        if raw is None:
            raise ValidationError("missing restriction", locus)
        s, t = self.label(sid), self.label(fid)
        if isinstance(raw, OMorphism):
            if (raw.dom, raw.cod) != (s, t):
                raise ValidationError(f"restriction must map {s} -> {t}", locus)
            self.oc.nat(raw)
            m = raw
        else:
            m = self.oc.morphism_between(s, t, raw)
            if m is None:
                src = raw.source.name or "?"
                dst = raw.target.name or "?"
                if raw.source != self.oc.orbit[s].functor or raw.target != self.oc.orbit[t].functor:
                    raise ValidationError(f"restriction maps {src} -> {dst}, expected {s} -> {t}", locus)
                raise ValidationError("restriction is not natural", locus)
        self._resolved[key] = m
        return m

    def face_restriction(self, sid: str, tid: str) -> OMorphism:
        """Composite restriction from ``sid`` down to any face ``tid``."""
        if sid == tid:
            return self.oc.identity(self.label(sid))
        key = (sid, tid)
        hit = self._face_cache.get(key)
        if hit is not None:
            return hit
        target = set(self.simplex[tid].vertices)
        vs = self.simplex[sid].vertices
        if not target < set(vs):
            raise ValidationError(f"{tid} is not a face of {sid}")
        i = max(k for k, v in enumerate(vs) if v not in target)
        fid = self.facets(sid)[i]
        out = self.oc.compose(self.face_restriction(fid, tid), self.restriction(sid, fid))
        self._face_cache[key] = out
        return out

    def sort_vertices(self, vs: Iterable[str]) -> Tuple[str, ...]:
        return tuple(sorted(set(vs), key=self.vpos.__getitem__))

    def __repr__(self) -> str:
        counts = [len(d) for d in self.dims]
        return f"<LabeledComplex cells={counts}>"


def _check_space(x: LabeledComplex) -> None:
    oc = x.oc
    if len(x.vpos) != len(x.vertices):
        raise ValidationError("duplicate vertex name")
    if len(x.simplex) != len(x.simplices):
        dup = next(s.id for s in x.simplices if sum(t.id == s.id for t in x.simplices) > 1)
        raise ValidationError("duplicate simplex id", f"simplex {dup}")
    for s in x.simplices:
        locus = f"simplex {s.id}"
        if not s.vertices:
            raise ValidationError("simplex has no vertices", locus)
        for v in s.vertices:
            if v not in x.vpos:
                raise ValidationError(f"unknown vertex {v!r}", locus)
        pos = [x.vpos[v] for v in s.vertices]
        if any(a >= b for a, b in zip(pos, pos[1:])):
            raise ValidationError("vertices are not strictly increasing in the vertex order", locus)
        if s.orbit not in oc.orbit:
            raise ValidationError(f"label {s.orbit!r} is not an orbit of the orbit category", locus)
        if x.by_vertices[s.vertices] != s.id:
            raise ValidationError("two simplices share a vertex set", locus)
    for s in x.simplices:
        x.facets(s.id)
    for v in x.vertices:
        if (v,) not in x.by_vertices:
            raise ValidationError("vertex has no 0-simplex", f"vertex {v}")
    expected = set()
    for s in x.simplices:
        for fid in x.facets(s.id):
            expected.add((s.id, fid))
            x.restriction(s.id, fid)
    extra = sorted(set(x.restrictions) - expected)
    if extra:
        raise ValidationError("restriction to a non-facet", f"simplex {extra[0][0]}, facet {extra[0][1]}")
    for s in x.simplices:
        if s.dim < 2:
            continue
        fs = x.facets(s.id)
        for i in range(s.dim + 1):
            for j in range(i + 1, s.dim + 1):
                # drop i then (shifted) j, versus drop j then i
                a = x.facets(fs[i])[j - 1]
                b = x.facets(fs[j])[i]
                assert a == b
                left = oc.compose(x.restriction(fs[i], a), x.restriction(s.id, fs[i]))
                right = oc.compose(x.restriction(fs[j], b), x.restriction(s.id, fs[j]))
                if left != right:
                    raise ValidationError(
                        f"restrictions to {a} via {fs[i]} and via {fs[j]} differ", f"simplex {s.id}"
                    )


def validate_space(x: LabeledComplex) -> ValidationReport:
    """Closure, vertex ordering, labels and functoriality of restrictions."""
    return report_from(lambda: _check_space(x))


def euler_class(x: LabeledComplex) -> UDVector:
    out = x.oc.ud_zero()
    for s in x.simplices:
        u = euler_unit(x.oc, s.orbit)
        out = out + u if s.dim % 2 == 0 else out - u
    return out


def subdivide(x: LabeledComplex) -> LabeledComplex:
    """Barycentric subdivision with labels pulled back from the carriers.

    A new simplex is a chain ``s0 < s1 < ... < sk`` of old simplices; its
    label is the label of ``sk``.  Dropping ``si`` with ``i < k`` keeps the
    carrier, so that restriction is the identity; dropping ``sk`` restricts
    along ``sk -> s(k-1)``.  The result records each new simplex's chain in
    its ``chains`` attribute.
    """
    order = [sid for d in x.dims for sid in d]
    rank = {sid: k for k, sid in enumerate(order)}
    proper_faces: Dict[str, List[str]] = {}
    for sid in order:
        vs = set(x.simplex[sid].vertices)
        proper_faces[sid] = [t for t in order if rank[t] < rank[sid] and set(x.simplex[t].vertices) < vs]

    chains_ending: Dict[str, List[Tuple[str, ...]]] = {}
    for sid in order:
        cs = [(sid,)]
        for t in proper_faces[sid]:
            cs.extend(c + (sid,) for c in chains_ending[t])
        chains_ending[sid] = cs

    def chain_id(c: Tuple[str, ...]) -> str:
        return c[0] if len(c) == 1 else "(" + ",".join(c) + ")"

    all_chains = [c for sid in order for c in chains_ending[sid]]
    all_chains.sort(key=lambda c: (len(c), [rank[s] for s in c]))
    simplices = [Simplex(chain_id(c), c, x.label(c[-1])) for c in all_chains]
    restrictions: Dict[Tuple[str, str], OMorphism] = {}
    for c in all_chains:
        if len(c) == 1:
            continue
        cid = chain_id(c)
        for i in range(len(c)):
            face = c[:i] + c[i + 1:]
            if i < len(c) - 1:
                restrictions[(cid, chain_id(face))] = x.oc.identity(x.label(c[-1]))
            else:
                restrictions[(cid, chain_id(face))] = x.face_restriction(c[-1], c[-2])
    out = LabeledComplex(x.oc, order, simplices, restrictions)
    out.chains = {chain_id(c): c for c in all_chains}
    return out


@dataclass
class DeltaComplex:
    """A semi-simplicial set: cells per dimension and their face indices.

    ``faces[n][k]`` lists, for the ``k``-th ``n``-cell, the indices of its
    ``n+1`` faces among the ``(n-1)``-cells, face ``i`` dropping vertex ``i``.
    """

    cells: List[List[tuple]] = field(default_factory=list)
    faces: List[List[Tuple[int, ...]]] = field(default_factory=list)

    def cell_counts(self) -> List[int]:
        return [len(c) for c in self.cells]

    def boundary(self, n: int) -> IntMatrix:
        """Boundary ``C_n -> C_(n-1)``."""
        rows = len(self.cells[n - 1]) if n >= 1 else 0
        m = IntMatrix(rows, len(self.cells[n]) if n < len(self.cells) else 0)
        if n < 1 or n >= len(self.cells):
            return m
        for k, fs in enumerate(self.faces[n]):
            for i, f in enumerate(fs):
                m.add_to(f, k, -1 if i % 2 else 1)
        return m


def total_space(x: LabeledComplex, d: str) -> DeltaComplex:
    """The diagram's value at object ``d`` as a semi-simplicial set.

    Cells are ``(simplex id, element of the label's set at d)``.
    """
    if d not in x.oc.base.objects:
        raise ValidationError(f"unknown object {d!r}")
    out = DeltaComplex()
    index: Dict[tuple, int] = {}
    for n, ids in enumerate(x.dims):
        cells, faces = [], []
        for sid in ids:
            functor = x.oc.orbit[x.label(sid)].functor
            fs = x.facets(sid)
            rs = [x.oc.nat(x.restriction(sid, f)) for f in fs]
            for t in functor.sets[d]:
                cells.append((sid, t))
                faces.append(tuple(index[(f, r(d, t))] for f, r in zip(fs, rs)))
        for k, cell in enumerate(cells):
            index[cell] = k
        out.cells.append(cells)
        out.faces.append(faces)
    return out


def orbit_point(x: LabeledComplex, t: Union[str, Orbit]) -> DeltaComplex:
    """Maps from orbit ``t`` into the diagram, as a semi-simplicial set.

    Cells are ``(simplex id, map t -> label)``; faces post-compose with the
    restrictions.  ``t`` may be an orbit name in ``x.oc`` or any orbit over
    the same base category.
    """
    oc = x.oc
    out = DeltaComplex()
    if isinstance(t, str):
        if t not in oc.orbit:
            raise ValidationError(f"unknown orbit {t!r}")
        homs = {s: [oc.nat(m) for m in oc.hom(t, s)] for s in oc.names}
    else:
        homs = {s: enumerate_nat_trans(t.functor, oc.orbit[s].functor) for s in oc.names}
    index: Dict[tuple, int] = {}
    for n, ids in enumerate(x.dims):
        cells, faces = [], []
        for sid in ids:
            fs = x.facets(sid)
            rs = [oc.nat(x.restriction(sid, f)) for f in fs]
            for g in homs[x.label(sid)]:
                cells.append((sid, g))
                faces.append(tuple(index[(f, compose_nat(r, g))] for f, r in zip(fs, rs)))
        for k, cell in enumerate(cells):
            index[cell] = k
        out.cells.append(cells)
        out.faces.append(faces)
    return out


class EquivariantSelfMap:
    """A simplicial self-map of the colimit with orbit-map components.

    ``components[sid]`` maps the label of ``sid`` to the label of its
    carrier, the simplex spanned by the image vertices.
    """

    def __init__(
        self,
        space: LabeledComplex,
        vertex_map: Mapping[str, str],
        components: Mapping[str, MapLike],
    ):
        self.space = space
        self.vertex_map: Dict[str, str] = dict(vertex_map)
        self.components: Dict[str, MapLike] = dict(components)
        self._resolved: Dict[str, OMorphism] = {}

    def image(self, sid: str) -> Tuple[str, ...]:
        return tuple(self.vertex_map[v] for v in self.space.simplex[sid].vertices)

    def carrier(self, sid: str) -> str:
        vs = self.space.sort_vertices(self.image(sid))
        cid = self.space.by_vertices.get(vs)
        if cid is None:
            raise ValidationError(f"image {list(vs)} is not a simplex", f"simplex {sid}")
        return cid

    def is_degenerate(self, sid: str) -> bool:
        img = self.image(sid)
        return len(set(img)) < len(img)

    def sign(self, sid: str) -> int:
        """Parity of the permutation sorting the image vertices."""
        pos = [self.space.vpos[v] for v in self.image(sid)]
        inversions = sum(1 for i in range(len(pos)) for j in range(i + 1, len(pos)) if pos[i] > pos[j])
        return -1 if inversions % 2 else 1

    def component(self, sid: str) -> OMorphism:
        hit = self._resolved.get(sid)
        if hit is not None:
            return hit
        x = self.space
        locus = f"map component {sid}"
        raw = self.components.get(sid)
        if raw is None:
            raise ValidationError("missing component", locus)
        s, t = x.label(sid), x.label(self.carrier(sid))
        if isinstance(raw, OMorphism):
            if (raw.dom, raw.cod) != (s, t):
                raise ValidationError(f"component must map {s} -> {t}", locus)
            m = raw
        else:
            m = x.oc.morphism_between(s, t, raw)
            if m is None:
                raise ValidationError(f"component is not a map {s} -> {t}", locus)
        self._resolved[sid] = m
        return m

    def invariant(self, sid: str) -> bool:
        return set(self.image(sid)) == set(self.space.simplex[sid].vertices)


def _check_map(f: EquivariantSelfMap) -> None:
    x = f.space
    for v in x.vertices:
        if v not in f.vertex_map:
            raise ValidationError("vertex map is not total", f"vertex {v}")
        if f.vertex_map[v] not in x.vpos:
            raise ValidationError(f"image {f.vertex_map[v]!r} is not a vertex", f"vertex {v}")
    extra = sorted(set(f.vertex_map) - set(x.vertices))
    if extra:
        raise ValidationError("vertex map names an unknown vertex", f"vertex {extra[0]}")
    extra = sorted(set(f.components) - set(x.simplex))
    if extra:
        raise ValidationError("component for an unknown simplex", f"map component {extra[0]}")
    for s in x.simplices:
        f.carrier(s.id)
    for s in x.simplices:
        f.component(s.id)
    oc = x.oc
    for s in x.simplices:
        cs = f.carrier(s.id)
        for fid in x.facets(s.id):
            ct = f.carrier(fid)
            left = oc.compose(f.component(fid), x.restriction(s.id, fid))
            right = oc.compose(x.face_restriction(cs, ct), f.component(s.id))
            if left != right:
                raise ValidationError(f"square with facet {fid} does not commute", f"map component {s.id}")


def validate_map(f: EquivariantSelfMap) -> ValidationReport:
    return report_from(lambda: _check_map(f))


def identity_map(x: LabeledComplex) -> EquivariantSelfMap:
    return EquivariantSelfMap(
        x, {v: v for v in x.vertices}, {s.id: x.oc.identity(s.orbit) for s in x.simplices}
    )


def subdivide_map(f: EquivariantSelfMap, sub: Optional[LabeledComplex] = None) -> EquivariantSelfMap:
    """The induced self-map of the barycentric subdivision.

    The barycenter of ``s`` goes to the barycenter of its carrier; a chain
    ending in ``s`` keeps the component of ``s``.
    """
    x = f.space
    if sub is None:
        sub = subdivide(x)
    vertex_map = {sid: f.carrier(sid) for sid in sub.vertices}
    components = {cid: f.component(chain[-1]) for cid, chain in sub.chains.items()}
    return EquivariantSelfMap(sub, vertex_map, components)
