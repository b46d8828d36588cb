"""Finite categories, finite-set-valued functors and natural transformations.

A category is given by its objects, its named morphisms and a *total*
composition table.  Table entries are written in diagrammatic order:
``(g, f) -> h`` means ``h = f o g`` for ``g: a -> b`` and ``f: b -> c``.
Identities are named ``id_<object>`` and inserted automatically, together
with their composition entries, when the input omits them.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from .validation import ValidationError, ValidationReport, report_from


@dataclass(frozen=True)
class Morphism:
    name: str
    dom: str
    cod: str


def identity_name(obj: str) -> str:
    return f"id_{obj}"


MorphismSpec = Union[Morphism, Tuple[str, str, str]]


class FinCategory:
    """A finite category with an explicit composition table."""

    def __init__(
        self,
        objects: Iterable[str],
        morphisms: Iterable[MorphismSpec] = (),
        composition: Union[Mapping[Tuple[str, str], str], Iterable[Tuple[str, str, str]]] = (),
        name: str = "",
    ):
        self.name = name
        self.objects: Tuple[str, ...] = tuple(objects)
        given = [m if isinstance(m, Morphism) else Morphism(*m) for m in morphisms]
        given_names = {m.name for m in given}
        ids = [Morphism(identity_name(o), o, o) for o in self.objects if identity_name(o) not in given_names]
        self._declared: Tuple[Morphism, ...] = tuple(ids + given)
        self.morphisms: Tuple[Morphism, ...] = tuple(dict((m.name, m) for m in self._declared).values())
        self.morphism: Dict[str, Morphism] = {m.name: m for m in self.morphisms}

        if isinstance(composition, Mapping):
            entries = [(g, f, h) for (g, f), h in composition.items()]
        else:
            entries = [tuple(e) for e in composition]
        self._entries: Tuple[Tuple[str, str, str], ...] = tuple(entries)  # type: ignore[arg-type]
        table: Dict[Tuple[str, str], str] = {}
        for g, f, h in entries:
            table.setdefault((g, f), h)
        for m in self.morphisms:
            table.setdefault((identity_name(m.dom), m.name), m.name)
            table.setdefault((m.name, identity_name(m.cod)), m.name)
        self.table = table

    def identity(self, obj: str) -> str:
        return identity_name(obj)

    def compose(self, f: str, g: str) -> str:
        """``f o g``: first ``g``, then ``f``."""
        try:
            return self.table[(g, f)]
        except KeyError:
            raise ValidationError(f"no composite for {f} o {g}") from None

    @cached_property
    def _hom(self) -> Dict[Tuple[str, str], Tuple[str, ...]]:
        out: Dict[Tuple[str, str], List[str]] = {(a, b): [] for a in self.objects for b in self.objects}
        for m in self.morphisms:
            if (m.dom, m.cod) in out:
                out[(m.dom, m.cod)].append(m.name)
        return {k: tuple(v) for k, v in out.items()}

    def hom(self, a: str, b: str) -> Tuple[str, ...]:
        return self._hom[(a, b)]

    def __repr__(self) -> str:
        label = f" {self.name!r}" if self.name else ""
        return f"<FinCategory{label}: {len(self.objects)} objects, {len(self.morphisms)} morphisms>"


def _check_category(c: FinCategory) -> None:
    if len(set(c.objects)) != len(c.objects):
        dup = next(o for o in c.objects if c.objects.count(o) > 1)
        raise ValidationError("duplicate object name", f"object {dup}")
    seen = set()
    for m in c._declared:
        if m.name in seen:
            raise ValidationError("duplicate morphism name", f"morphism {m.name}")
        seen.add(m.name)
        for end in (m.dom, m.cod):
            if end not in c.objects:
                raise ValidationError(f"unknown object {end!r}", f"morphism {m.name}")
    for o in c.objects:
        i = c.morphism[identity_name(o)]
        if (i.dom, i.cod) != (o, o):
            raise ValidationError("identity must be an endomorphism", f"morphism {i.name}")

    first: Dict[Tuple[str, str], str] = {}
    for g, f, h in c._entries:
        locus = f"composition ({g}, {f})"
        for n in (g, f, h):
            if n not in c.morphism:
                raise ValidationError(f"unknown morphism {n!r}", locus)
        mg, mf, mh = c.morphism[g], c.morphism[f], c.morphism[h]
        if mg.cod != mf.dom:
            raise ValidationError("non-composable pair", locus)
        if (mh.dom, mh.cod) != (mg.dom, mf.cod):
            raise ValidationError(f"result {h} has wrong domain or codomain", locus)
        if first.setdefault((g, f), h) != h:
            raise ValidationError("conflicting entries", locus)

    for g in c.morphisms:
        for f in c.morphisms:
            if g.cod == f.dom and (g.name, f.name) not in c.table:
                raise ValidationError("composition table gap", f"composition ({g.name}, {f.name})")

    for m in c.morphisms:
        if c.table[(identity_name(m.dom), m.name)] != m.name or c.table[(m.name, identity_name(m.cod))] != m.name:
            raise ValidationError("identity law fails", f"morphism {m.name}")

    for g in c.morphisms:
        for f in c.morphisms:
            if g.cod != f.dom:
                continue
            fg = c.table[(g.name, f.name)]
            for h in c.morphisms:
                if f.cod != h.dom:
                    continue
                left = c.table[(g.name, c.table[(f.name, h.name)])]
                right = c.table[(fg, h.name)]
                if left != right:
                    raise ValidationError(
                        f"associativity fails: {left} != {right}",
                        f"triple ({g.name}, {f.name}, {h.name})",
                    )


def validate_category(c: FinCategory) -> ValidationReport:
    """Check the category axioms; report the first violation found."""
    return report_from(lambda: _check_category(c))


class FinFunctor:
    """A functor from a finite category to finite sets."""

    def __init__(
        self,
        base: FinCategory,
        sets: Mapping[str, Sequence[str]],
        action: Optional[Mapping[str, Mapping[str, str]]] = None,
        name: str = "",
    ):
        self.base = base
        self.name = name
        self.sets: Dict[str, Tuple[str, ...]] = {o: tuple(sets.get(o, ())) for o in base.objects}
        self._extra_objects = tuple(o for o in sets if o not in base.objects)
        action = dict(action or {})
        self.action: Dict[str, Dict[str, str]] = {}
        for m in base.morphisms:
            if m.name in action:
                self.action[m.name] = dict(action[m.name])
            elif m.dom == m.cod and m.name == identity_name(m.dom):
                self.action[m.name] = {x: x for x in self.sets[m.dom]}
        self._extra_morphisms = tuple(n for n in action if n not in base.morphism)

    @cached_property
    def signature(self) -> tuple:
        return (
            self.base.objects,
            tuple(m.name for m in self.base.morphisms),
            tuple(self.sets[o] for o in self.base.objects),
            tuple(tuple(sorted(self.action.get(m.name, {}).items())) for m in self.base.morphisms),
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FinFunctor):
            return NotImplemented
        return self is other or self.signature == other.signature

    def __hash__(self) -> int:
        return hash(self.signature)

    def __call__(self, morphism: str, element: str) -> str:
        return self.action[morphism][element]

    def size(self) -> int:
        return sum(len(s) for s in self.sets.values())

    def __repr__(self) -> str:
        body = ", ".join(f"{o}:{len(self.sets[o])}" for o in self.base.objects)
        return f"<FinFunctor {self.name or '?'} ({body})>"


def _check_functor(F: FinFunctor) -> None:
    c = F.base
    if F._extra_objects:
        raise ValidationError(f"unknown object {F._extra_objects[0]!r}", f"functor {F.name}")
    if F._extra_morphisms:
        raise ValidationError(f"unknown morphism {F._extra_morphisms[0]!r}", f"functor {F.name}")
    for o, elems in F.sets.items():
        if len(set(elems)) != len(elems):
            raise ValidationError("duplicate element", f"functor {F.name}, object {o}")
    for m in c.morphisms:
        locus = f"functor {F.name}, morphism {m.name}"
        act = F.action.get(m.name)
        if act is None:
            raise ValidationError("missing action", locus)
        if set(act) != set(F.sets[m.dom]):
            raise ValidationError("action is not total on its domain set", locus)
        cod = set(F.sets[m.cod])
        for x, y in act.items():
            if y not in cod:
                raise ValidationError(f"{x} maps to {y!r}, outside the codomain set", locus)
    for o in c.objects:
        i = identity_name(o)
        if any(F.action[i][x] != x for x in F.sets[o]):
            raise ValidationError("identity does not act trivially", f"functor {F.name}, object {o}")
    for (g, f), h in c.table.items():
        mg = c.morphism[g]
        for x in F.sets[mg.dom]:
            if F.action[f][F.action[g][x]] != F.action[h][x]:
                raise ValidationError(
                    f"functoriality fails on {x}", f"functor {F.name}, composite ({g}, {f})"
                )


def validate_functor(F: FinFunctor) -> ValidationReport:
    return report_from(lambda: _check_functor(F))


class NatTrans:
    """A natural transformation between two functors on the same base.

    ``components[d][x]`` is the image of ``x`` in ``target.sets[d]``.
    """

    def __init__(self, source: FinFunctor, target: FinFunctor, components: Mapping[str, Mapping[str, str]]):
        self.source = source
        self.target = target
        self.components: Dict[str, Dict[str, str]] = {
            o: dict(components.get(o, {})) for o in source.base.objects
        }

    @cached_property
    def key(self) -> Tuple[Tuple[str, ...], ...]:
        return tuple(
            tuple(self.components[o].get(x, "") for x in self.source.sets[o]) for o in self.source.base.objects
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, NatTrans):
            return NotImplemented
        return self.key == other.key and self.source == other.source and self.target == other.target

    def __hash__(self) -> int:
        return hash(self.key)

    def __call__(self, obj: str, element: str) -> str:
        return self.components[obj][element]

    def __repr__(self) -> str:
        return f"<NatTrans {self.source.name}->{self.target.name} {self.key}>"


def identity_nat(F: FinFunctor) -> NatTrans:
    return NatTrans(F, F, {o: {x: x for x in F.sets[o]} for o in F.base.objects})


def is_natural(t: NatTrans) -> bool:
    F, G = t.source, t.target
    for o in F.base.objects:
        comp = t.components[o]
        if set(comp) != set(F.sets[o]) or any(y not in G.sets[o] for y in comp.values()):
            return False
    for m in F.base.morphisms:
        a, b = t.components[m.dom], t.components[m.cod]
        fa, ga = F.action[m.name], G.action[m.name]
        for x in F.sets[m.dom]:
            if b[fa[x]] != ga[a[x]]:
                return False
    return True


def colimit(F: FinFunctor) -> Tuple[List[List[Tuple[str, str]]], Dict[str, Dict[str, int]]]:
    """Colimit of a set-valued functor.

    Returns the equivalence classes of ``(object, element)`` pairs under
    ``x ~ F(f)(x)`` and, per object, the projection of each element to its
    class index.  Classes are ordered by first appearance in object order,
    then element order.
    """
    parent: Dict[Tuple[str, str], Tuple[str, str]] = {}

    def find(u):
        while parent[u] != u:
            parent[u] = parent[parent[u]]
            u = parent[u]
        return u

    order = [(o, x) for o in F.base.objects for x in F.sets[o]]
    for u in order:
        parent[u] = u
    for m in F.base.morphisms:
        for x, y in F.action.get(m.name, {}).items():
            ru, rv = find((m.dom, x)), find((m.cod, y))
            if ru != rv:
                parent[rv] = ru
    index: Dict[Tuple[str, str], int] = {}
    classes: List[List[Tuple[str, str]]] = []
    proj: Dict[str, Dict[str, int]] = {o: {} for o in F.base.objects}
    for u in order:
        r = find(u)
        if r not in index:
            index[r] = len(classes)
            classes.append([])
        classes[index[r]].append(u)
        proj[u[0]][u[1]] = index[r]
    return classes, proj


def enumerate_nat_trans(F: FinFunctor, G: FinFunctor) -> List[NatTrans]:
    """All natural transformations ``F -> G`` in lexicographic order.

    Components are enumerated object by object (in the base's object
    order), and within an object element by element, each element's image
    running through ``G``'s element order.  Naturality is checked as soon
    as both ends of a morphism have been assigned.
    """
    if F.base is not G.base and F.base.objects != G.base.objects:
        raise ValidationError("functors have different base categories")
    c = F.base
    objs = c.objects
    pos = {o: k for k, o in enumerate(objs)}
    checks: List[List] = [[] for _ in objs]
    for m in c.morphisms:
        checks[max(pos[m.dom], pos[m.cod])].append(m)

    results: List[NatTrans] = []
    current: Dict[str, Dict[str, str]] = {}

    def consistent(k: int) -> bool:
        for m in checks[k]:
            a, b = current[m.dom], current[m.cod]
            fa, ga = F.action[m.name], G.action[m.name]
            for x in F.sets[m.dom]:
                if b[fa[x]] != ga[a[x]]:
                    return False
        return True

    def extend(k: int) -> None:
        if k == len(objs):
            results.append(NatTrans(F, G, current))
            return
        o = objs[k]
        src = F.sets[o]
        for images in itertools.product(G.sets[o], repeat=len(src)):
            current[o] = dict(zip(src, images))
            if consistent(k):
                extend(k + 1)
        current.pop(o, None)

    extend(0)
    return results


def compose_nat(f: NatTrans, g: NatTrans) -> NatTrans:
    """``f o g``: apply ``g`` first."""
    if g.target != f.source:
        raise ValidationError("non-composable pair of natural transformations")
    comps = {o: {x: f.components[o][y] for x, y in g.components[o].items()} for o in g.source.base.objects}
    out = NatTrans(g.source, f.target, comps)
    assert is_natural(out)
    return out


def is_iso(f: NatTrans) -> bool:
    for o in f.source.base.objects:
        comp = f.components[o]
        if len(f.source.sets[o]) != len(f.target.sets[o]) or len(set(comp.values())) != len(comp):
            return False
    return True


def inverse_nat(f: NatTrans) -> NatTrans:
    if not is_iso(f):
        raise ValidationError("not an isomorphism")
    return NatTrans(f.target, f.source, {o: {y: x for x, y in c.items()} for o, c in f.components.items()})
