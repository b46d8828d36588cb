import random

from conftest import build_end_swap, point_space

from diagram_homology.dspace import (
    EquivariantSelfMap,
    LabeledComplex,
    euler_class,
    identity_map,
    subdivide_map,
)
from diagram_homology.generate import random_self_map
from diagram_homology.isotropy import IsotropyRing
from diagram_homology.lefschetz import (
    invariant_orbit_report,
    lefschetz_number,
    ordinary_lefschetz,
    theorem_check,
)


def fixed_cell_oracle(f):
    """Lefschetz data summed over simplices mapped onto themselves.

    Each such simplex contributes its orientation sign times the
    augmentation of its component, with sign ``(-1)**dim``.
    """
    x = f.space
    ring = IsotropyRing(x.oc)
    lam = x.oc.ud_zero()
    ordinary = 0
    for s in x.simplices:
        if f.is_degenerate(s.id) or f.carrier(s.id) != s.id:
            continue
        w = (-1) ** s.dim * f.sign(s.id)
        ordinary += w
        lam = lam + ring.augmentation(ring.gen(f.component(s.id))) * w
    return lam, ordinary


def rotation(n):
    edges = [(i, i + 1) for i in range(n - 1)] + [(0, n - 1)]
    x = point_space(n, edges)
    ident = x.oc.identity("P")
    return EquivariantSelfMap(x, {f"c{i}": f"c{(i + 1) % n}" for i in range(n)}, {s.id: ident for s in x.simplices})


def test_end_swap(zigzag):
    _, z = zigzag
    f = build_end_swap(z)
    assert lefschetz_number(f).entries == (0, 1)
    assert ordinary_lefschetz(f) == 1
    rep = invariant_orbit_report(f)
    assert rep.invariant == {"T2": [], "T3": ["e"]}
    assert rep.disjoint == {"T2": True, "T3": False}
    assert rep.nonzero_classes() == ["T3"]
    check = theorem_check(f)
    assert check.passed and not check.violations


def test_identity_gives_euler_class(zigzag, instances):
    _, z = zigzag
    assert lefschetz_number(identity_map(z)).entries == (2, -1)
    assert ordinary_lefschetz(identity_map(z)) == 1
    for x in instances:
        assert lefschetz_number(identity_map(x)) == euler_class(x)


def test_identity_report_has_no_certificates(zigzag):
    _, z = zigzag
    rep = invariant_orbit_report(identity_map(z))
    assert rep.invariant == {"T2": ["v1", "v2"], "T3": ["e"]}
    assert not any(rep.disjoint.values())
    assert theorem_check(identity_map(z)).passed


def test_empty_complex(zigzag):
    oc, _ = zigzag
    x = LabeledComplex(oc, [], [])
    assert lefschetz_number(EquivariantSelfMap(x, {}, {})).is_zero()


def test_circle_rotation():
    f = rotation(4)
    assert lefschetz_number(f).entries == (0,)
    assert ordinary_lefschetz(f) == 0
    # adjacent edges share a vertex with their image at this triangulation
    assert invariant_orbit_report(f).disjoint == {"P": False}
    check = theorem_check(f, subdivisions=1)
    assert check.passed
    assert check.report.disjoint == {"P": True}
    assert check.report.lambda_.entries == (0,)


def test_circle_reflection_has_fixed_points():
    n = 4
    edges = [(i, i + 1) for i in range(n - 1)] + [(0, n - 1)]
    x = point_space(n, edges)
    ident = x.oc.identity("P")
    refl = {"c0": "c0", "c1": "c3", "c2": "c2", "c3": "c1"}
    f = EquivariantSelfMap(x, refl, {s.id: ident for s in x.simplices})
    assert ordinary_lefschetz(f) == 2
    assert lefschetz_number(f).entries == (2,)


def test_matches_fixed_cell_oracle(instances):
    rng = random.Random(17)
    seen = 0
    for x in instances:
        f = random_self_map(x, rng)
        if f is None:
            continue
        lam, ordinary = fixed_cell_oracle(f)
        assert lefschetz_number(f) == lam
        assert ordinary_lefschetz(f) == ordinary
        seen += 1
    assert seen >= 30


def test_invariant_under_lifted_subdivision(instances):
    rng = random.Random(23)
    for x in instances[:20]:
        f = random_self_map(x, rng)
        if f is None:
            continue
        g = subdivide_map(f)
        assert lefschetz_number(g) == lefschetz_number(f)
        assert ordinary_lefschetz(g) == ordinary_lefschetz(f)


def test_theorem_on_random_maps(instances):
    rng = random.Random(29)
    for x in instances:
        f = random_self_map(x, rng)
        if f is not None:
            assert theorem_check(f).passed
