"""Equivariant Lefschetz numbers and invariant-orbit reports.

The equivariant Lefschetz number is evaluated on chains: the alternating
sum of the diagonals of the induced maps on ``C_k(X) (x) I``, pushed to
``U(D)`` through the augmentation.  Each diagonal entry is an
endomorphism of the cell's own orbit, so a class can only receive a
nonzero coordinate from simplices that are mapped onto themselves.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional

from .chains import CoefficientSystem, build_chain_complex, induced_chain_map
from .dspace import EquivariantSelfMap, subdivide_map
from .isotropy import IsotropyRing, trace_element
from .orbits import UDVector


def _ring(f: EquivariantSelfMap, ring: Optional[IsotropyRing]) -> IsotropyRing:
    if ring is None or ring.oc is not f.space.oc:
        ring = IsotropyRing(f.space.oc)
    return ring


def lefschetz_number(f: EquivariantSelfMap, ring: Optional[IsotropyRing] = None) -> UDVector:
    ring = _ring(f, ring)
    c = build_chain_complex(f.space, CoefficientSystem.isotropy(ring, check=False))
    cm = induced_chain_map(f, c)
    total = ring.zero()
    for k, mk in enumerate(cm.i):
        t = trace_element(mk)
        total = total + (t if k % 2 == 0 else -t)
    out = ring.augmentation(total)
    ab = ring.abelianization
    if ab.phi_well_defined and ab.phi(ab.reduce(total)) != out:
        raise AssertionError("augmentation of the trace class disagrees with its representative")
    return out


def ordinary_lefschetz(f: EquivariantSelfMap) -> int:
    """Classical Lefschetz number of the map on the colimit."""
    c = build_chain_complex(f.space, CoefficientSystem.constant(f.space.oc))
    cm = induced_chain_map(f, c)
    total = 0
    for k, z in enumerate(cm.z):
        tr = sum(z[i, i] for i in range(z.nrows))
        total += tr if k % 2 == 0 else -tr
    return total


@dataclass
class LefschetzReport:
    lambda_: UDVector
    invariant: Dict[str, List[str]]
    disjoint: Dict[str, bool]
    ordinary: int = 0

    def nonzero_classes(self) -> List[str]:
        return [l for l, v in zip(self.lambda_.labels, self.lambda_.entries) if v]


def _disjoint_image(f: EquivariantSelfMap, sid: str) -> bool:
    x = f.space
    mine = set(x.simplex[sid].vertices)
    carrier = set(x.simplex[f.carrier(sid)].vertices)
    return not (mine & carrier)


def invariant_orbit_report(f: EquivariantSelfMap, ring: Optional[IsotropyRing] = None) -> LefschetzReport:
    """Invariant simplices and disjoint-image certificates per orbit class.

    A simplex is invariant when the vertex map sends its vertex set onto
    itself.  The certificate for a class holds when every simplex labeled
    in that class is disjoint from its image.
    """
    x = f.space
    oc = x.oc
    labels = oc.representatives
    invariant: Dict[str, List[str]] = {l: [] for l in labels}
    disjoint: Dict[str, bool] = {l: True for l in labels}
    for s in x.simplices:
        cls = labels[oc.class_of[s.orbit]]
        if f.invariant(s.id):
            invariant[cls].append(s.id)
        if not _disjoint_image(f, s.id):
            disjoint[cls] = False
    lam = lefschetz_number(f, ring)
    return LefschetzReport(lam, invariant, disjoint, ordinary_lefschetz(f))


@dataclass
class TheoremCheck:
    passed: bool
    report: LefschetzReport
    subdivisions: int = 0
    violations: List[str] = field(default_factory=list)


def theorem_check(f: EquivariantSelfMap, subdivisions: int = 0, ring: Optional[IsotropyRing] = None) -> TheoremCheck:
    """Check ``lambda_m == 0`` for every class without invariant orbits.

    Two hypotheses are tested: a disjoint-image certificate for the class,
    and the weaker absence of any invariant simplex of that class.  With
    ``subdivisions > 0`` the map is first lifted to iterated barycentric
    subdivisions, which can only sharpen the certificates.
    """
    g = f
    for _ in range(subdivisions):
        g = subdivide_map(g)
    report = invariant_orbit_report(g, ring if subdivisions == 0 else None)
    violations = []
    for label, value in zip(report.lambda_.labels, report.lambda_.entries):
        if value == 0:
            continue
        if report.disjoint[label]:
            violations.append(f"{label}: certified disjoint but lambda = {value}")
        elif not report.invariant[label]:
            violations.append(f"{label}: no invariant simplex but lambda = {value}")
    return TheoremCheck(not violations, report, subdivisions, violations)
