"""Random small instances: categories, orbits, labeled complexes and self-maps.

Used by the property tests and the acceptance harness.  All generators
take a :class:`random.Random` so runs are reproducible from a seed.
"""

from __future__ import annotations

import itertools
import random
from typing import Dict, List, Optional, Sequence, Tuple

from .dspace import EquivariantSelfMap, LabeledComplex, Simplex
from .fincat import FinCategory, FinFunctor, validate_functor
from .orbits import OMorphism, Orbit, OrbitCategory, build_orbit_category, free_orbit, validate_orbit


def point_category() -> FinCategory:
    return FinCategory(["*"], name="point")


def arrow_category() -> FinCategory:
    """``d0 -> d1``."""
    return FinCategory(["d0", "d1"], [("f", "d0", "d1")], name="J")


def involution_category() -> FinCategory:
    """One object with an automorphism ``s`` of order two."""
    return FinCategory(["*"], [("s", "*", "*")], [("s", "s", "id_*")], name="Z2")


def span_category() -> FinCategory:
    """``b <- a -> c``."""
    return FinCategory(["a", "b", "c"], [("l", "a", "b"), ("r", "a", "c")], name="span")


CATEGORY_POOL = (point_category, arrow_category, involution_category)


def random_functor(c: FinCategory, rng: random.Random, max_size: int = 3, name: str = "") -> FinFunctor:
    sizes = {o: rng.randint(0, max_size) for o in c.objects}
    sets = {o: [f"{o}.{k}" for k in range(n)] for o, n in sizes.items()}
    action = {}
    for m in c.morphisms:
        if m.name == f"id_{m.dom}":
            continue
        tgt = sets[m.cod]
        action[m.name] = {x: rng.choice(tgt) for x in sets[m.dom]} if tgt else {}
    return FinFunctor(c, sets, action, name=name)


def random_orbit(c: FinCategory, rng: random.Random, name: str, max_size: int = 3, tries: int = 200) -> Orbit:
    """A random orbit, falling back to a free orbit after ``tries`` rejections."""
    for _ in range(tries):
        F = random_functor(c, rng, max_size, name)
        o = Orbit(name, F)
        if validate_functor(F) and validate_orbit(o):
            return o
    free = free_orbit(c, rng.choice(c.objects))
    return Orbit(name, FinFunctor(c, free.functor.sets, free.functor.action, name=name))


def random_orbit_category(
    rng: random.Random,
    categories: Sequence = CATEGORY_POOL,
    max_orbits: int = 3,
    max_size: int = 3,
) -> OrbitCategory:
    c = rng.choice(categories)()
    n = rng.randint(1, max_orbits)
    orbits = [random_orbit(c, rng, f"T{k}", max_size) for k in range(n)]
    return build_orbit_category(c, orbits)


def random_simplicial_complex(
    rng: random.Random, max_vertices: int = 6, max_dim: int = 2, max_simplices: int = 30
) -> List[Tuple[int, ...]]:
    """Vertex tuples of a random closed complex, sorted by dimension."""
    while True:
        nv = rng.randint(1, max_vertices)
        faces = {(v,) for v in range(nv)}
        tops = []
        for d in range(1, max_dim + 1):
            cands = list(itertools.combinations(range(nv), d + 1))
            rng.shuffle(cands)
            tops.extend(cands[: rng.randint(0, min(len(cands), 4))])
        for t in tops:
            for k in range(1, len(t) + 1):
                faces.update(itertools.combinations(t, k))
        if len(faces) <= max_simplices:
            return sorted(faces, key=lambda s: (len(s), s))


def _facet_tuples(vs: Tuple[int, ...]) -> List[Tuple[int, ...]]:
    return [vs[:i] + vs[i + 1:] for i in range(len(vs))]


def random_labeled_complex(
    oc: OrbitCategory,
    rng: random.Random,
    max_vertices: int = 6,
    max_dim: int = 2,
    max_simplices: int = 30,
) -> LabeledComplex:
    """Random labels and functorial restrictions on a random complex.

    Labels and restrictions are chosen bottom-up; a simplex for which no
    consistent choice exists is dropped together with its cofaces.
    """
    shape = random_simplicial_complex(rng, max_vertices, max_dim, max_simplices)
    label: Dict[Tuple[int, ...], str] = {}
    restr: Dict[Tuple[Tuple[int, ...], Tuple[int, ...]], OMorphism] = {}
    names = list(oc.names)
    for vs in shape:
        if len(vs) == 1:
            label[vs] = rng.choice(names)
            continue
        facets = _facet_tuples(vs)
        if any(f not in label for f in facets):
            continue
        cands = names[:]
        rng.shuffle(cands)
        for t in cands:
            found = _search_restrictions(oc, rng, vs, t, facets, label, restr)
            if found is not None:
                label[vs] = t
                for f, m in zip(facets, found):
                    restr[(vs, f)] = m
                break

    def sid(vs):
        return "v" + "".join(str(v) for v in vs) if len(vs) == 1 else "s" + "_".join(str(v) for v in vs)

    kept = [vs for vs in shape if vs in label]
    verts = sorted({v for vs in kept for v in vs})
    simplices = [Simplex(sid(vs), tuple(f"v{v}" for v in vs), label[vs]) for vs in kept]
    restrictions = {(sid(a), sid(b)): m for (a, b), m in restr.items()}
    return LabeledComplex(oc, [f"v{v}" for v in verts], simplices, restrictions)


def _search_restrictions(oc, rng, vs, t, facets, label, restr):
    """Backtracking choice of maps ``t -> label(facet)`` agreeing on codim-2 faces."""
    choice: List[Optional[OMorphism]] = [None] * len(facets)
    options = []
    for f in facets:
        hs = oc.hom(t, label[f])
        if not hs:
            return None
        hs = hs[:]
        rng.shuffle(hs)
        options.append(hs)

    def ok(i):
        if len(vs) < 3:
            return True
        for j in range(i):
            a, b = (j, i)
            # facet a drops vertex a; facet b drops vertex b; common face drops both
            common = tuple(v for k, v in enumerate(vs) if k not in (a, b))
            fa, fb = facets[a], facets[b]
            left = oc.compose(restr[(fa, common)], choice[a])
            right = oc.compose(restr[(fb, common)], choice[b])
            if left != right:
                return False
        return True

    def go(i):
        if i == len(facets):
            return True
        for m in options[i]:
            choice[i] = m
            if ok(i) and go(i + 1):
                return True
        choice[i] = None
        return False

    return list(choice) if go(0) else None


def random_self_map(
    x: LabeledComplex, rng: random.Random, attempts: int = 40, node_limit: int = 200
) -> Optional[EquivariantSelfMap]:
    """A random valid equivariant simplicial self-map, or None."""
    oc = x.oc
    order = [sid for d in x.dims for sid in d]
    for _ in range(attempts):
        kind = rng.random()
        if kind < 0.3:
            perm = list(x.vertices)
            rng.shuffle(perm)
            vmap = dict(zip(x.vertices, perm))
        elif kind < 0.5:
            target = rng.choice(x.vertices)
            vmap = {v: target for v in x.vertices}
        else:
            vmap = {v: rng.choice(x.vertices) for v in x.vertices}
        f = EquivariantSelfMap(x, vmap, {})
        try:
            carriers = {sid: f.carrier(sid) for sid in order}
        except Exception:
            continue
        comps: Dict[str, OMorphism] = {}
        budget = [node_limit]

        def fits(sid, u):
            for fid in x.facets(sid):
                left = oc.compose(comps[fid], x.restriction(sid, fid))
                right = oc.compose(x.face_restriction(carriers[sid], carriers[fid]), u)
                if left != right:
                    return False
            return True

        def go(k):
            if k == len(order):
                return True
            budget[0] -= 1
            if budget[0] < 0:
                return False
            sid = order[k]
            cands = oc.hom(x.label(sid), x.label(carriers[sid]))[:]
            rng.shuffle(cands)
            for u in cands:
                if fits(sid, u):
                    comps[sid] = u
                    if go(k + 1):
                        return True
                    del comps[sid]
            return False

        if go(0):
            return EquivariantSelfMap(x, vmap, comps)
    return None


def random_instance(rng: random.Random, **kw) -> LabeledComplex:
    """A random orbit category and a random labeled complex over it."""
    oc = random_orbit_category(rng)
    return random_labeled_complex(oc, rng, **kw)
