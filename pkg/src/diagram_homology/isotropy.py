"""The isotropy ring of a finite orbit category.

As an abelian group the ring is free on the morphisms of the orbit
category; the product of two generators is their composite when it is
defined (``f * g = f o g`` if ``cod g == dom f``) and zero otherwise.
The idempotents ``1_T`` are the identities, and the right ideal
``1_T I`` is spanned by the morphisms with codomain ``T``.

Traces and ranks live in the abelianization ``I / [I, I]``, computed by
integer row reduction of the span of all commutators ``fg - gf``.  The
augmentation sends an element to the sums of its endomorphism
coefficients, grouped by isomorphism class.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .linalg import IntegerLattice, IntMatrix
from .orbits import OMorphism, OrbitCategory, UDVector
from .validation import ValidationError


class IsotropyRing:
    def __init__(self, oc: OrbitCategory):
        self.oc = oc
        self.generators: Tuple[OMorphism, ...] = tuple(oc.morphisms())
        self.index: Dict[OMorphism, int] = {g: i for i, g in enumerate(self.generators)}
        self._zeta: Dict[str, List[OMorphism]] = {t: [] for t in oc.names}
        for g in self.generators:
            self._zeta[g.cod].append(g)

    def element(self, coeffs: Optional[Mapping[OMorphism, int]] = None) -> "IsotropyElement":
        return IsotropyElement(self, coeffs or {})

    def gen(self, m: OMorphism, k: int = 1) -> "IsotropyElement":
        return IsotropyElement(self, {m: k})

    def one(self, t: str) -> "IsotropyElement":
        """The idempotent ``1_t``."""
        return self.gen(self.oc.identity(t))

    def zero(self) -> "IsotropyElement":
        return IsotropyElement(self, {})

    def unit(self) -> "IsotropyElement":
        return IsotropyElement(self, {self.oc.identity(t): 1 for t in self.oc.names})

    def zeta_component(self, t: str) -> List[OMorphism]:
        """Z-basis of the right ideal ``1_t I``: all morphisms into ``t``."""
        if t not in self.oc.orbit:
            raise ValidationError(f"unknown orbit {t!r}")
        return self._zeta[t]

    @cached_property
    def abelianization(self) -> "Abelianization":
        return Abelianization(self)

    def augmentation(self, a: "IsotropyElement") -> UDVector:
        entries = [0] * len(self.oc.iso_classes)
        for m, k in a.coeffs.items():
            if m.dom == m.cod:
                entries[self.oc.class_of[m.dom]] += k
        return UDVector(self.oc.representatives, tuple(entries))

    def __repr__(self) -> str:
        return f"<IsotropyRing on {len(self.generators)} generators>"


class IsotropyElement:
    """A finite integer combination of orbit-category morphisms."""

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring: IsotropyRing, coeffs: Mapping[OMorphism, int]):
        self.ring = ring
        self.coeffs: Dict[OMorphism, int] = {m: k for m, k in coeffs.items() if k}

    def __add__(self, other: "IsotropyElement") -> "IsotropyElement":
        out = dict(self.coeffs)
        for m, k in other.coeffs.items():
            out[m] = out.get(m, 0) + k
        return IsotropyElement(self.ring, out)

    def __neg__(self) -> "IsotropyElement":
        return IsotropyElement(self.ring, {m: -k for m, k in self.coeffs.items()})

    def __sub__(self, other: "IsotropyElement") -> "IsotropyElement":
        return self + (-other)

    def scale(self, k: int) -> "IsotropyElement":
        return IsotropyElement(self.ring, {m: k * v for m, v in self.coeffs.items()})

    def __rmul__(self, k: int) -> "IsotropyElement":
        return self.scale(k)

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        return multiply(self, other)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IsotropyElement):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(frozenset(self.coeffs.items()))

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def terms(self) -> List[Tuple[OMorphism, int]]:
        idx = self.ring.index
        return sorted(self.coeffs.items(), key=lambda mk: idx[mk[0]])

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        name = self.ring.oc.name
        return " + ".join(f"{k}·{name(m)}" for m, k in self.terms())

    __repr__ = __str__


def multiply(a: IsotropyElement, b: IsotropyElement) -> IsotropyElement:
    if a.ring is not b.ring:
        raise ValidationError("elements of different isotropy rings")
    oc = a.ring.oc
    out: Dict[OMorphism, int] = {}
    for f, x in a.coeffs.items():
        for g, y in b.coeffs.items():
            if g.cod == f.dom:
                h = oc.compose(f, g)
                out[h] = out.get(h, 0) + x * y
    return IsotropyElement(a.ring, out)


def unit(ring: IsotropyRing) -> IsotropyElement:
    return ring.unit()


def augmentation(a: IsotropyElement) -> UDVector:
    return a.ring.augmentation(a)


@dataclass(frozen=True)
class AbIClass:
    """A class in the abelianization, held as its canonical representative."""

    coeffs: Tuple[Tuple[int, int], ...]

    def is_zero(self) -> bool:
        return not self.coeffs


class Abelianization:
    """``I / [I, I]`` with canonical reduction of representatives."""

    def __init__(self, ring: IsotropyRing):
        self.ring = ring
        oc = ring.oc
        idx = ring.index
        self.lattice = IntegerLattice()
        for g in ring.generators:
            for f in ring.generators:
                if g.cod != f.dom:
                    continue
                # fg - gf, where gf vanishes unless cod f == dom g
                vec: Dict[int, int] = {}
                fg = idx[oc.compose(f, g)]
                vec[fg] = vec.get(fg, 0) + 1
                if f.cod == g.dom:
                    gf = idx[oc.compose(g, f)]
                    vec[gf] = vec.get(gf, 0) - 1
                self.lattice.add(vec)
        pivots = self.lattice.pivots()
        self.free_basis: Tuple[OMorphism, ...] = tuple(
            g for i, g in enumerate(ring.generators) if i not in pivots
        )
        self.torsion: Tuple[Tuple[OMorphism, int], ...] = tuple(
            (ring.generators[p], d) for p, d in sorted(pivots.items()) if d > 1
        )
        # the augmentation descends to I/[I,I] iff it kills every commutator
        self.phi_counterexample: Optional[Tuple[OMorphism, OMorphism]] = None
        for g in ring.generators:
            for f in ring.generators:
                if g.cod == f.dom and f.cod == g.dom and f.dom != g.dom:
                    fg, gf = ring.gen(oc.compose(f, g)), ring.gen(oc.compose(g, f))
                    if ring.augmentation(fg) != ring.augmentation(gf):
                        self.phi_counterexample = (f, g)
                        break
            if self.phi_counterexample:
                break

    @property
    def phi_well_defined(self) -> bool:
        return self.phi_counterexample is None

    def basis(self) -> Tuple[OMorphism, ...]:
        return self.free_basis

    def reduce(self, a: IsotropyElement) -> AbIClass:
        idx = self.ring.index
        vec = self.lattice.reduce({idx[m]: k for m, k in a.coeffs.items()})
        return AbIClass(tuple(sorted(vec.items())))

    def lift(self, c: AbIClass) -> IsotropyElement:
        gens = self.ring.generators
        return IsotropyElement(self.ring, {gens[i]: k for i, k in c.coeffs})

    def add(self, a: AbIClass, b: AbIClass) -> AbIClass:
        return self.reduce(self.lift(a) + self.lift(b))

    def scale(self, a: AbIClass, k: int) -> AbIClass:
        return self.reduce(self.lift(a).scale(k))

    def phi(self, c: AbIClass) -> UDVector:
        """The augmentation induced on the abelianization.

        Only defined when the augmentation kills all commutators.  That
        fails as soon as two non-isomorphic orbits map to each other with
        ``f o g`` and ``g o f`` both endomorphisms, e.g. a retract.
        """
        if not self.phi_well_defined:
            f, g = self.phi_counterexample
            name = self.ring.oc.name
            raise ValidationError(
                f"augmentation does not descend to Ab(I): "
                f"phi({name(f)} o {name(g)}) != phi({name(g)} o {name(f)})"
            )
        return self.ring.augmentation(self.lift(c))

    def format(self, c: AbIClass) -> str:
        return str(self.lift(c))


def abelianization(ring: IsotropyRing) -> Abelianization:
    return ring.abelianization


def hs_rank(ring: IsotropyRing, module: Iterable[Tuple[str, int]]) -> AbIClass:
    """Hattori-Stallings rank of a sum of ideals ``(1_T I)^k``."""
    total = ring.zero()
    for t, k in module:
        total = total + ring.one(t).scale(k)
    return ring.abelianization.reduce(total)


Label = Tuple[str, str]


class MatrixOverI:
    """Sparse matrix with isotropy-ring entries.

    Rows and columns are labeled ``(cell id, orbit)``.  The entry at a row
    of orbit ``T`` and a column of orbit ``S`` is supported on maps
    ``S -> T``, so it acts on ``1_S I`` by left multiplication.
    """

    def __init__(
        self,
        ring: IsotropyRing,
        rows: Sequence[Label],
        cols: Sequence[Label],
        entries: Optional[Mapping[Tuple[int, int], IsotropyElement]] = None,
    ):
        self.ring = ring
        self.rows: Tuple[Label, ...] = tuple(rows)
        self.cols: Tuple[Label, ...] = tuple(cols)
        self.entries: Dict[Tuple[int, int], IsotropyElement] = {
            ij: e for ij, e in (entries or {}).items() if e
        }

    def __getitem__(self, ij: Tuple[int, int]) -> IsotropyElement:
        return self.entries.get(ij, self.ring.zero())

    def set(self, i: int, j: int, value: IsotropyElement) -> None:
        if value:
            self.entries[(i, j)] = value
        else:
            self.entries.pop((i, j), None)

    def add_to(self, i: int, j: int, value: IsotropyElement) -> None:
        self.set(i, j, self[i, j] + value)

    def check_support(self) -> None:
        for (i, j), e in self.entries.items():
            t, s = self.rows[i][1], self.cols[j][1]
            for m in e.coeffs:
                if (m.dom, m.cod) != (s, t):
                    raise ValidationError(
                        f"entry ({i}, {j}) has term {self.ring.oc.name(m)}, expected a map {s} -> {t}"
                    )

    def __matmul__(self, other: "MatrixOverI") -> "MatrixOverI":
        if self.cols != other.rows:
            raise ValidationError("matrix labels do not match for multiplication")
        by_row: Dict[int, List[Tuple[int, IsotropyElement]]] = {}
        for (k, j), e in other.entries.items():
            by_row.setdefault(k, []).append((j, e))
        out = MatrixOverI(self.ring, self.rows, other.cols)
        for (i, k), a in self.entries.items():
            for j, b in by_row.get(k, ()):
                out.add_to(i, j, a * b)
        return out

    def __sub__(self, other: "MatrixOverI") -> "MatrixOverI":
        out = MatrixOverI(self.ring, self.rows, self.cols, dict(self.entries))
        for ij, e in other.entries.items():
            out.add_to(*ij, -e)
        return out

    def is_zero(self) -> bool:
        return not self.entries

    def is_square(self) -> bool:
        return self.rows == self.cols

    def to_integer(self) -> Tuple[IntMatrix, List[Tuple[int, OMorphism]], List[Tuple[int, OMorphism]]]:
        """Expand to a Z-matrix over the morphism bases of the ideals.

        Returns the matrix and the row and column generators, each a
        ``(label index, basis morphism)`` pair.
        """
        ring = self.ring
        oc = ring.oc

        def basis(labels):
            gens = []
            pos = {}
            for k, (_, t) in enumerate(labels):
                for g in ring.zeta_component(t):
                    pos[(k, g)] = len(gens)
                    gens.append((k, g))
            return gens, pos

        row_gens, row_pos = basis(self.rows)
        col_gens, _ = basis(self.cols)
        m = IntMatrix(len(row_gens), len(col_gens))
        by_col: Dict[int, List[Tuple[int, IsotropyElement]]] = {}
        for (i, j), e in self.entries.items():
            by_col.setdefault(j, []).append((i, e))
        for c, (j, g) in enumerate(col_gens):
            for i, e in by_col.get(j, ()):
                for f, k in e.coeffs.items():
                    m.add_to(row_pos[(i, oc.compose(f, g))], c, k)
        return m, row_gens, col_gens

    def __repr__(self) -> str:
        return f"<MatrixOverI {len(self.rows)}x{len(self.cols)}, {len(self.entries)} entries>"


def trace_element(m: MatrixOverI) -> IsotropyElement:
    """Sum of the diagonal entries, before passing to the abelianization."""
    if not m.is_square():
        raise ValidationError("trace of a non-square matrix")
    total = m.ring.zero()
    for (i, j), e in m.entries.items():
        if i == j:
            total = total + e
    return total


def hs_trace(m: MatrixOverI) -> AbIClass:
    return m.ring.abelianization.reduce(trace_element(m))
