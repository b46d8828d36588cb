"""Equivariant cellular chains with coefficients in a functor on the orbit category.

In degree ``n`` the chain group is the sum over ``n``-simplices of
``M(label)``; the boundary applies ``(-1)**i M(r_i)`` to reach the
``i``-th facet.  With the isotropy system ``M(T) = 1_T I`` the same
boundary is also kept as a matrix over the ring, with entries
``sum_i (-1)**i r_i``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Dict, List, Mapping, Optional, Tuple

from .dspace import DeltaComplex, EquivariantSelfMap, LabeledComplex
from .isotropy import IsotropyRing, MatrixOverI, hs_rank
from .linalg import IntMatrix, smith_diagonal
from .orbits import OMorphism, OrbitCategory, UDVector
from .validation import ValidationError

CONSTANT = "constant"
ISOTROPY = "isotropy"


class CoefficientSystem:
    """A covariant functor from the orbit category to free abelian groups.

    ``ranks[T]`` is the rank of ``M(T)``; ``maps(f)`` returns the integer
    matrix of ``M(f): M(S) -> M(T)`` for ``f: S -> T``.
    """

    def __init__(
        self,
        oc: OrbitCategory,
        ranks: Mapping[str, int],
        maps: Callable[[OMorphism], IntMatrix],
        kind: str = "custom",
        ring: Optional[IsotropyRing] = None,
        check: bool = True,
    ):
        self.oc = oc
        self.ranks = dict(ranks)
        self._maps = maps
        self._cache: Dict[OMorphism, IntMatrix] = {}
        self.kind = kind
        self.ring = ring
        if check:
            self.check()

    def matrix(self, f: OMorphism) -> IntMatrix:
        m = self._cache.get(f)
        if m is None:
            m = self._maps(f)
            if m.shape != (self.ranks[f.cod], self.ranks[f.dom]):
                raise ValidationError(f"M({self.oc.name(f)}) has shape {m.shape}")
            self._cache[f] = m
        return m

    def check(self) -> None:
        oc = self.oc
        for t in oc.names:
            if t not in self.ranks:
                raise ValidationError(f"no group for orbit {t}")
            if self.matrix(oc.identity(t)) != IntMatrix.identity(self.ranks[t]):
                raise ValidationError(f"M(id_{t}) is not the identity")
        gens = oc.morphisms()
        for g in gens:
            for f in gens:
                if g.cod == f.dom and self.matrix(oc.compose(f, g)) != self.matrix(f) @ self.matrix(g):
                    raise ValidationError(f"M fails functoriality on {oc.name(f)} o {oc.name(g)}")

    @classmethod
    def constant(cls, oc: OrbitCategory) -> "CoefficientSystem":
        """The constant system: ``Z`` everywhere, identities everywhere."""
        return cls(oc, {t: 1 for t in oc.names}, lambda f: IntMatrix.identity(1), kind=CONSTANT)

    @classmethod
    def isotropy(cls, ring: IsotropyRing, check: bool = True) -> "CoefficientSystem":
        """``T -> 1_T I`` on the morphism basis; ``f`` acts by left multiplication."""
        oc = ring.oc

        def left_mult(f: OMorphism) -> IntMatrix:
            src = ring.zeta_component(f.dom)
            dst = {g: i for i, g in enumerate(ring.zeta_component(f.cod))}
            m = IntMatrix(len(dst), len(src))
            for j, g in enumerate(src):
                m.add_to(dst[oc.compose(f, g)], j, 1)
            return m

        ranks = {t: len(ring.zeta_component(t)) for t in oc.names}
        return cls(oc, ranks, left_mult, kind=ISOTROPY, ring=ring, check=check)


@dataclass
class ChainComplex:
    space: LabeledComplex
    system: CoefficientSystem
    generators: List[List[Tuple[str, int]]]
    offsets: List[Dict[str, int]]
    boundary: List[IntMatrix]
    i_boundary: Optional[List[MatrixOverI]] = None

    @property
    def top(self) -> int:
        return len(self.generators) - 1

    def rank(self, n: int) -> int:
        return len(self.generators[n]) if 0 <= n < len(self.generators) else 0

    def d(self, n: int) -> IntMatrix:
        """Boundary ``C_n -> C_(n-1)``; zero outside the stored range."""
        if 1 <= n < len(self.boundary):
            return self.boundary[n]
        return IntMatrix(self.rank(n - 1), self.rank(n))

    def labels(self, n: int) -> List[Tuple[str, str]]:
        return [(sid, self.space.label(sid)) for sid in self.space.cells(n)]

    def squares_vanish(self) -> bool:
        for n in range(2, len(self.boundary)):
            if not (self.boundary[n - 1] @ self.boundary[n]).is_zero():
                return False
            if self.i_boundary is not None and not (self.i_boundary[n - 1] @ self.i_boundary[n]).is_zero():
                return False
        return True


def build_chain_complex(x: LabeledComplex, m: CoefficientSystem) -> ChainComplex:
    for s in x.simplices:
        if s.orbit not in m.ranks:
            raise ValidationError(f"orbit {s.orbit} missing from coefficient system", f"simplex {s.id}")
    generators: List[List[Tuple[str, int]]] = []
    offsets: List[Dict[str, int]] = []
    for ids in x.dims:
        gens: List[Tuple[str, int]] = []
        off: Dict[str, int] = {}
        for sid in ids:
            off[sid] = len(gens)
            gens.extend((sid, k) for k in range(m.ranks[x.label(sid)]))
        generators.append(gens)
        offsets.append(off)

    boundary = [IntMatrix(0, len(generators[0]) if generators else 0)]
    iso = m.kind == ISOTROPY
    i_boundary = None
    if iso:
        i_boundary = [MatrixOverI(m.ring, [], [(sid, x.label(sid)) for sid in x.cells(0)])]
    for n in range(1, len(x.dims)):
        d = IntMatrix(len(generators[n - 1]), len(generators[n]))
        row_pos = {sid: k for k, sid in enumerate(x.dims[n - 1])}
        di = None
        if iso:
            di = MatrixOverI(
                m.ring,
                [(sid, x.label(sid)) for sid in x.dims[n - 1]],
                [(sid, x.label(sid)) for sid in x.dims[n]],
            )
        for col, sid in enumerate(x.dims[n]):
            c0 = offsets[n][sid]
            for i, fid in enumerate(x.facets(sid)):
                sign = -1 if i % 2 else 1
                r = x.restriction(sid, fid)
                r0 = offsets[n - 1][fid]
                block = m.matrix(r)
                for a, row in enumerate(block.rows):
                    for b, v in row.items():
                        d.add_to(r0 + a, c0 + b, sign * v)
                if di is not None:
                    di.add_to(row_pos[fid], col, m.ring.gen(r, sign))
        boundary.append(d)
        if di is not None:
            i_boundary.append(di)
    return ChainComplex(x, m, generators, offsets, boundary, i_boundary)


@dataclass
class HomologyResult:
    betti: List[int]
    torsion: List[Tuple[int, ...]]
    chain_ranks: List[int]
    grading: Optional[Dict[str, List[int]]] = None
    grading_torsion: Optional[Dict[str, List[Tuple[int, ...]]]] = None

    def ranks(self) -> List[int]:
        return list(self.betti)

    def euler_characteristic(self) -> int:
        return sum((-1) ** n * b for n, b in enumerate(self.betti))

    def group(self, n: int) -> str:
        """``H_n`` written as a sum of cyclic groups, e.g. ``Z^2 + Z/2``."""
        if n >= len(self.betti):
            return "0"
        parts = []
        b = self.betti[n]
        if b:
            parts.append("Z" if b == 1 else f"Z^{b}")
        parts.extend(f"Z/{t}" for t in self.torsion[n])
        return " + ".join(parts) if parts else "0"


def homology_from_boundaries(ranks: List[int], boundaries: Mapping[int, IntMatrix]) -> Tuple[List[int], List[Tuple[int, ...]]]:
    """Betti numbers and torsion from chain ranks and boundaries ``d_n``."""
    factors = {n: smith_diagonal(d) for n, d in boundaries.items()}
    betti, torsion = [], []
    for n, r in enumerate(ranks):
        rk_in = len(factors.get(n, ()))
        out = factors.get(n + 1, [])
        betti.append(r - rk_in - len(out))
        torsion.append(tuple(f for f in out if f > 1))
    return betti, torsion


def delta_homology(dc: DeltaComplex) -> Tuple[List[int], List[Tuple[int, ...]]]:
    ranks = dc.cell_counts()
    return homology_from_boundaries(ranks, {n: dc.boundary(n) for n in range(1, len(ranks))})


def homology(c: ChainComplex) -> HomologyResult:
    ranks = [c.rank(n) for n in range(len(c.generators))]
    betti, torsion = homology_from_boundaries(ranks, {n: c.d(n) for n in range(1, len(ranks))})
    euler = sum((-1) ** n * r for n, r in enumerate(ranks))
    if sum((-1) ** n * b for n, b in enumerate(betti)) != euler:
        raise AssertionError("Betti numbers disagree with chain ranks")
    result = HomologyResult(betti, torsion, ranks)
    if c.system.kind == ISOTROPY:
        result.grading, result.grading_torsion = _domain_grading(c)
        for n in range(len(ranks)):
            if sum(g[n] for g in result.grading.values()) != betti[n]:
                raise AssertionError("domain grading does not add up to the total homology")
    return result


def _domain_grading(c: ChainComplex):
    """Homology of each summand spanned by basis maps out of a fixed orbit."""
    ring = c.system.ring
    x = c.space
    grading: Dict[str, List[int]] = {}
    torsion: Dict[str, List[Tuple[int, ...]]] = {}
    for s in ring.oc.names:
        idx = []
        for n, gens in enumerate(c.generators):
            idx.append([k for k, (sid, b) in enumerate(gens) if ring.zeta_component(x.label(sid))[b].dom == s])
        sub = {n: c.d(n).submatrix(idx[n - 1], idx[n]) for n in range(1, len(idx))}
        grading[s], torsion[s] = homology_from_boundaries([len(i) for i in idx], sub)
    return grading, torsion


def chain_chi_hs(c: ChainComplex) -> UDVector:
    """Augmented Hattori-Stallings Euler characteristic of the chain modules.

    The rank of ``1_T I`` is the class of ``1_T``; the augmentation is
    applied to the alternating sum of these basis idempotents, which
    agrees with the augmentation of the class whenever the latter is
    defined on the abelianization.
    """
    if c.system.kind != ISOTROPY:
        raise ValidationError("chain-level Hattori-Stallings Euler characteristic needs isotropy coefficients")
    ring = c.system.ring
    x = c.space
    total = ring.zero()
    for n in range(len(x.dims)):
        for sid in x.dims[n]:
            total = total + ring.one(x.label(sid)).scale(-1 if n % 2 else 1)
    out = ring.augmentation(total)
    ab = ring.abelianization
    if ab.phi_well_defined:
        module_sum = ab.reduce(ring.zero())
        for n in range(len(x.dims)):
            r = hs_rank(ring, [(x.label(sid), 1) for sid in x.dims[n]])
            module_sum = ab.add(module_sum, r if n % 2 == 0 else ab.scale(r, -1))
        if ab.phi(module_sum) != out:
            raise AssertionError("augmentation of the rank class disagrees with its representative")
    return out


@dataclass
class ChainMap:
    z: List[IntMatrix]
    i: Optional[List[MatrixOverI]] = field(default=None)


def induced_chain_map(f: EquivariantSelfMap, c: ChainComplex) -> ChainMap:
    """Chain map of ``f``: the block of ``s`` goes to the block of its carrier
    with ``sign * M(component)``; degenerate simplices go to zero."""
    x = c.space
    if f.space is not x:
        raise ValidationError("map and chain complex live on different spaces")
    m = c.system
    iso = m.kind == ISOTROPY
    zs: List[IntMatrix] = []
    isos: Optional[List[MatrixOverI]] = [] if iso else None
    for n, ids in enumerate(x.dims):
        z = IntMatrix(c.rank(n), c.rank(n))
        labels = [(sid, x.label(sid)) for sid in ids]
        mi = MatrixOverI(m.ring, labels, labels) if iso else None
        pos = {sid: k for k, sid in enumerate(ids)}
        for sid in ids:
            if f.is_degenerate(sid):
                continue
            target = f.carrier(sid)
            if x.simplex[target].dim != n:
                raise ValidationError("nondegenerate image has the wrong dimension", f"simplex {sid}")
            sign = f.sign(sid)
            u = f.component(sid)
            r0, c0 = c.offsets[n][target], c.offsets[n][sid]
            for a, row in enumerate(m.matrix(u).rows):
                for b, v in row.items():
                    z.add_to(r0 + a, c0 + b, sign * v)
            if mi is not None:
                mi.add_to(pos[target], pos[sid], m.ring.gen(u, sign))
        zs.append(z)
        if isos is not None:
            isos.append(mi)
    out = ChainMap(zs, isos)
    for n in range(1, len(x.dims)):
        if c.d(n) @ zs[n] != zs[n - 1] @ c.d(n):
            raise AssertionError(f"induced map does not commute with the boundary in degree {n}")
        if isos is not None and not (c.i_boundary[n] @ isos[n] - isos[n - 1] @ c.i_boundary[n]).is_zero():
            raise AssertionError(f"induced map over I does not commute with the boundary in degree {n}")
    return out
