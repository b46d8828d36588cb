import random
import sys
from importlib import resources

import pytest

from diagram_homology import (
    EquivariantSelfMap,
    FinCategory,
    FinFunctor,
    LabeledComplex,
    NatTrans,
    Orbit,
    Simplex,
    build_orbit_category,
    load,
)
from diagram_homology.generate import random_instance


def fixture_path(name: str) -> str:
    return str(resources.files("diagram_homology") / "fixtures" / name)


def arrow():
    return FinCategory(["d0", "d1"], [("f", "d0", "d1")])


def t2(c):
    return Orbit("T2", FinFunctor(c, {"d0": ["x", "y"], "d1": ["p"]}, {"f": {"x": "p", "y": "p"}}, name="T2"))


def t3(c):
    return Orbit("T3", FinFunctor(c, {"d0": ["a", "b", "c"], "d1": ["p"]}, {"f": {"a": "p", "b": "p", "c": "p"}}, name="T3"))


def level(s, t, d0):
    return NatTrans(s.functor, t.functor, {"d0": d0, "d1": {"p": "p"}})


def build_zigzag():
    """The J-example by hand, independent of the document loader."""
    c = arrow()
    T2, T3 = t2(c), t3(c)
    oc = build_orbit_category(c, [T2, T3])
    z = LabeledComplex(
        oc,
        ["v1", "v2"],
        [Simplex("v1", ("v1",), "T2"), Simplex("v2", ("v2",), "T2"), Simplex("e", ("v1", "v2"), "T3")],
        {
            ("e", "v1"): level(T3, T2, {"a": "x", "b": "y", "c": "y"}),
            ("e", "v2"): level(T3, T2, {"a": "x", "b": "x", "c": "y"}),
        },
    )
    return oc, z


def build_end_swap(z):
    oc = z.oc
    T2, T3 = oc.orbit["T2"], oc.orbit["T3"]
    swap = {"x": "y", "y": "x"}
    return EquivariantSelfMap(
        z,
        {"v1": "v2", "v2": "v1"},
        {"v1": level(T2, T2, swap), "v2": level(T2, T2, swap), "e": level(T3, T3, {"a": "c", "b": "b", "c": "a"})},
    )


def point_space(n_vertices, edges, name="P"):
    """A simplicial complex over the one-object category with a point orbit."""
    c = FinCategory(["*"])
    P = Orbit(name, FinFunctor(c, {"*": ["pt"]}, name=name))
    oc = build_orbit_category(c, [P])
    vs = [f"c{i}" for i in range(n_vertices)]
    ident = NatTrans(P.functor, P.functor, {"*": {"pt": "pt"}})
    simplices = [Simplex(v, (v,), name) for v in vs]
    restr = {}
    for face in edges:
        sid = "".join(vs[i] for i in face)
        simplices.append(Simplex(sid, tuple(vs[i] for i in face), name))
    ids = {s.vertices: s.id for s in simplices}
    for s in simplices:
        for k in range(len(s.vertices)):
            if s.dim > 0:
                restr[(s.id, ids[s.vertices[:k] + s.vertices[k + 1:]])] = ident
    return LabeledComplex(oc, vs, simplices, restr)


@pytest.fixture
def zigzag():
    return build_zigzag()


@pytest.fixture
def zigzag_doc():
    return load(fixture_path("j_zigzag.json"))


@pytest.fixture(scope="session")
def instances():
    """Forty random labeled complexes from a fixed seed."""
    rng = random.Random(20240611)
    return [random_instance(rng) for _ in range(40)]


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.line(n))
