"""Orbits over a finite category and the finite orbit category they span.

An orbit is a set-valued functor whose colimit is a single point.  Since
orbit values are finite discrete sets, homotopy classes of maps between
orbits are just the maps themselves, so the orbit category is never
quotiented: its hom-sets are the enumerated natural transformations.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from .fincat import (
    FinCategory,
    FinFunctor,
    NatTrans,
    colimit,
    compose_nat,
    enumerate_nat_trans,
    identity_name,
    is_iso,
    validate_functor,
)
from .validation import OK, ValidationError, ValidationReport, fail


@dataclass(frozen=True)
class Orbit:
    name: str
    functor: FinFunctor


def validate_orbit(o: Orbit) -> ValidationReport:
    report = validate_functor(o.functor)
    if not report:
        return report
    classes, _ = colimit(o.functor)
    if not classes:
        return fail("empty functor has empty colimit", f"orbit {o.name}")
    if len(classes) > 1:
        parts = "; ".join("{" + ", ".join(f"{d}:{x}" for d, x in cls) + "}" for cls in classes)
        return fail(f"colimit has {len(classes)} points: {parts}", f"orbit {o.name}")
    return OK


def free_orbit(c: FinCategory, d: str, name: Optional[str] = None) -> Orbit:
    """The representable orbit ``hom(d, -)`` acting by post-composition."""
    if d not in c.objects:
        raise ValidationError(f"unknown object {d!r}")
    sets = {e: c.hom(d, e) for e in c.objects}
    action = {
        m.name: {h: c.compose(m.name, h) for h in sets[m.dom]}
        for m in c.morphisms
    }
    name = name or f"F({d})"
    return Orbit(name, FinFunctor(c, sets, action, name=name))


@dataclass(frozen=True, order=True)
class OMorphism:
    """A morphism of the orbit category: the ``index``-th map ``dom -> cod``."""

    dom: str
    cod: str
    index: int


@dataclass(frozen=True)
class UDVector:
    """Integer vector indexed by isomorphism classes of orbits."""

    labels: Tuple[str, ...]
    entries: Tuple[int, ...]

    def __post_init__(self):
        if len(self.labels) != len(self.entries):
            raise ValueError("labels and entries differ in length")

    @classmethod
    def zero(cls, labels: Sequence[str]) -> "UDVector":
        return cls(tuple(labels), (0,) * len(labels))

    def _check(self, other: "UDVector") -> None:
        if self.labels != other.labels:
            raise ValueError(f"incompatible coordinates {self.labels} vs {other.labels}")

    def __add__(self, other: "UDVector") -> "UDVector":
        self._check(other)
        return UDVector(self.labels, tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "UDVector") -> "UDVector":
        self._check(other)
        return UDVector(self.labels, tuple(a - b for a, b in zip(self.entries, other.entries)))

    def __neg__(self) -> "UDVector":
        return UDVector(self.labels, tuple(-a for a in self.entries))

    def __mul__(self, k: int) -> "UDVector":
        return UDVector(self.labels, tuple(k * a for a in self.entries))

    __rmul__ = __mul__

    def __getitem__(self, key: Union[int, str]) -> int:
        if isinstance(key, str):
            return self.entries[self.labels.index(key)]
        return self.entries[key]

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def is_zero(self) -> bool:
        return not any(self.entries)

    def as_dict(self) -> Dict[str, int]:
        return dict(zip(self.labels, self.entries))

    def __str__(self) -> str:
        return ", ".join(f"{l}: {e}" for l, e in zip(self.labels, self.entries))


class OrbitCategory:
    """The full subcategory of functors spanned by a finite list of orbits.

    Hom-sets are enumerated eagerly; composition is looked up through the
    canonical key of each natural transformation.
    """

    def __init__(self, base: FinCategory, orbits: Sequence[Orbit]):
        self.base = base
        self.orbits: Tuple[Orbit, ...] = tuple(orbits)
        self.names: Tuple[str, ...] = tuple(o.name for o in self.orbits)
        self.orbit: Dict[str, Orbit] = {o.name: o for o in self.orbits}
        self.homs: Dict[Tuple[str, str], List[NatTrans]] = {}
        self._lookup: Dict[Tuple[str, str], Dict[tuple, int]] = {}
        for s in self.orbits:
            for t in self.orbits:
                maps = enumerate_nat_trans(s.functor, t.functor)
                self.homs[(s.name, t.name)] = maps
                self._lookup[(s.name, t.name)] = {m.key: i for i, m in enumerate(maps)}
        self._compose_cache: Dict[Tuple[OMorphism, OMorphism], OMorphism] = {}
        self._identity = {
            t: self.morphism_between(
                t,
                t,
                NatTrans(
                    self.orbit[t].functor,
                    self.orbit[t].functor,
                    {d: {x: x for x in self.orbit[t].functor.sets[d]} for d in base.objects},
                )
            )
            for t in self.names
        }
        self._classify()

    def _classify(self) -> None:
        classes: List[List[str]] = []
        for t in self.names:
            for cls in classes:
                if any(is_iso(m) for m in self.homs[(t, cls[0])]):
                    cls.append(t)
                    break
            else:
                classes.append([t])
        position = {t: i for i, t in enumerate(self.names)}
        reps = [min(cls) for cls in classes]
        order = sorted(range(len(classes)), key=lambda k: position[reps[k]])
        self.iso_classes: Tuple[Tuple[str, ...], ...] = tuple(tuple(classes[k]) for k in order)
        self.representatives: Tuple[str, ...] = tuple(reps[k] for k in order)
        self.class_of: Dict[str, int] = {t: i for i, cls in enumerate(self.iso_classes) for t in cls}

    # morphisms -----------------------------------------------------------

    def hom(self, s: str, t: str) -> List[OMorphism]:
        return [OMorphism(s, t, i) for i in range(len(self.homs[(s, t)]))]

    def morphisms(self) -> List[OMorphism]:
        return [m for s in self.names for t in self.names for m in self.hom(s, t)]

    def nat(self, m: OMorphism) -> NatTrans:
        return self.homs[(m.dom, m.cod)][m.index]

    def morphism_of(self, t: NatTrans) -> Optional[OMorphism]:
        """The orbit-category morphism carried by ``t``, or None if ``t`` is
        not a map between orbits of this category."""
        s_name = self._name_of(t.source)
        t_name = self._name_of(t.target)
        if s_name is None or t_name is None:
            return None
        idx = self._lookup[(s_name, t_name)].get(t.key)
        return None if idx is None else OMorphism(s_name, t_name, idx)

    def morphism_between(self, s: str, t: str, nat: NatTrans) -> Optional[OMorphism]:
        """Look ``nat`` up in ``hom(s, t)``; None if it is not such a map."""
        if (s, t) not in self._lookup:
            return None
        if nat.source != self.orbit[s].functor or nat.target != self.orbit[t].functor:
            return None
        idx = self._lookup[(s, t)].get(nat.key)
        return None if idx is None else OMorphism(s, t, idx)

    def _name_of(self, F: FinFunctor) -> Optional[str]:
        if F.name in self.orbit and self.orbit[F.name].functor == F:
            return F.name
        for o in self.orbits:
            if o.functor == F:
                return o.name
        return None

    def identity(self, t: str) -> OMorphism:
        return self._identity[t]

    def compose(self, f: OMorphism, g: OMorphism) -> OMorphism:
        """``f o g`` (apply ``g`` first)."""
        key = (f, g)
        hit = self._compose_cache.get(key)
        if hit is not None:
            return hit
        if g.cod != f.dom:
            raise ValidationError(f"cannot compose {self.name(f)} after {self.name(g)}")
        nat = compose_nat(self.nat(f), self.nat(g))
        out = OMorphism(g.dom, f.cod, self._lookup[(g.dom, f.cod)][nat.key])
        self._compose_cache[key] = out
        return out

    def is_iso(self, m: OMorphism) -> bool:
        return is_iso(self.nat(m))

    def name(self, m: OMorphism) -> str:
        if m.dom == m.cod and self._identity.get(m.dom) == m:
            return identity_name(m.dom)
        return f"{m.dom}>{m.cod}#{m.index}"

    def parse_name(self, text: str) -> OMorphism:
        if text.startswith("id_") and text[3:] in self.orbit:
            return self.identity(text[3:])
        try:
            pair, idx = text.rsplit("#", 1)
            s, t = pair.split(">", 1)
            m = OMorphism(s, t, int(idx))
            self.homs[(s, t)][m.index]
        except (ValueError, KeyError, IndexError):
            raise ValidationError(f"unknown orbit morphism {text!r}") from None
        return m

    # U(D) ----------------------------------------------------------------

    @property
    def ud_labels(self) -> Tuple[str, ...]:
        return self.representatives

    def ud_zero(self) -> UDVector:
        return UDVector.zero(self.representatives)

    def __repr__(self) -> str:
        return f"<OrbitCategory {list(self.names)}, {len(self.iso_classes)} iso classes>"


def build_orbit_category(c: FinCategory, orbits: Iterable[Orbit]) -> OrbitCategory:
    orbits = list(orbits)
    seen = set()
    for o in orbits:
        if o.name in seen:
            raise ValidationError("duplicate orbit name", f"orbit {o.name}")
        seen.add(o.name)
        if o.functor.base is not c and o.functor.base.objects != c.objects:
            raise ValidationError("orbit lives over a different category", f"orbit {o.name}")
        validate_orbit(o).raise_for_error()
    return OrbitCategory(c, orbits)


def euler_unit(oc: OrbitCategory, name: str) -> UDVector:
    if name not in oc.class_of:
        raise ValidationError(f"unknown orbit {name!r}")
    entries = [0] * len(oc.iso_classes)
    entries[oc.class_of[name]] = 1
    return UDVector(oc.representatives, tuple(entries))
