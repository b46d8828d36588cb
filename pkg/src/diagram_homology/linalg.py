"""Exact integer linear algebra.

Sparse integer matrices, diagonalization by unimodular row and column
operations (Smith normal form invariants), integer row lattices in
echelon form with canonical coset reduction, and an independent rank
computation over the rationals.

Everything uses Python integers, so there is no overflow regime.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

Row = Dict[int, int]


class IntMatrix:
    """Sparse integer matrix stored as a list of ``{column: value}`` rows."""

    __slots__ = ("nrows", "ncols", "rows")

    def __init__(self, nrows: int, ncols: int, rows: Optional[List[Row]] = None):
        self.nrows = nrows
        self.ncols = ncols
        self.rows: List[Row] = rows if rows is not None else [{} for _ in range(nrows)]

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "IntMatrix":
        return cls(nrows, ncols)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, [{i: 1} for i in range(n)])

    @classmethod
    def from_dense(cls, dense: Sequence[Sequence[int]], ncols: Optional[int] = None) -> "IntMatrix":
        if ncols is None:
            ncols = len(dense[0]) if dense else 0
        rows = [{j: int(v) for j, v in enumerate(r) if v} for r in dense]
        return cls(len(dense), ncols, rows)

    def to_dense(self) -> List[List[int]]:
        out = [[0] * self.ncols for _ in range(self.nrows)]
        for i, row in enumerate(self.rows):
            for j, v in row.items():
                out[i][j] = v
        return out

    def __getitem__(self, ij: Tuple[int, int]) -> int:
        i, j = ij
        return self.rows[i].get(j, 0)

    def add_to(self, i: int, j: int, value: int) -> None:
        if not value:
            return
        row = self.rows[i]
        v = row.get(j, 0) + value
        if v:
            row[j] = v
        else:
            del row[j]

    def nnz(self) -> int:
        return sum(len(r) for r in self.rows)

    def is_zero(self) -> bool:
        return not any(self.rows)

    def transpose(self) -> "IntMatrix":
        t = IntMatrix(self.ncols, self.nrows)
        for i, row in enumerate(self.rows):
            for j, v in row.items():
                t.rows[j][i] = v
        return t

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        out = IntMatrix(self.nrows, other.ncols)
        for i, row in enumerate(self.rows):
            acc: Row = {}
            for k, a in row.items():
                for j, b in other.rows[k].items():
                    acc[j] = acc.get(j, 0) + a * b
            out.rows[i] = {j: v for j, v in acc.items() if v}
        return out

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} - {other.shape}")
        out = IntMatrix(self.nrows, self.ncols, [dict(r) for r in self.rows])
        for i, row in enumerate(other.rows):
            for j, v in row.items():
                out.add_to(i, j, -v)
        return out

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.nrows, self.ncols)

    def submatrix(self, row_idx: Sequence[int], col_idx: Sequence[int]) -> "IntMatrix":
        cmap = {c: k for k, c in enumerate(col_idx)}
        rows = []
        for i in row_idx:
            rows.append({cmap[j]: v for j, v in self.rows[i].items() if j in cmap})
        return IntMatrix(len(row_idx), len(col_idx), rows)

    def __repr__(self) -> str:
        return f"IntMatrix({self.nrows}x{self.ncols}, nnz={self.nnz()})"


def _invariant_factors(diagonal: Iterable[int]) -> List[int]:
    # diag(a, b) is equivalent to diag(gcd, lcm); repeat until each divides the next
    d = sorted(abs(x) for x in diagonal if x)
    units = [x for x in d if x == 1]
    rest = [x for x in d if x != 1]
    n = len(rest)
    for i in range(n):
        for j in range(i + 1, n):
            a, b = rest[i], rest[j]
            g = gcd(a, b)
            rest[i], rest[j] = g, a // g * b
    rest.sort()
    return units + rest


def smith_diagonal(m: IntMatrix) -> List[int]:
    """Nonzero invariant factors of ``m``, ascending, each dividing the next.

    Sparse elimination; pivots are chosen among entries of minimal
    absolute value, preferring units with small fill-in.
    """
    rows: Dict[int, Row] = {i: dict(r) for i, r in enumerate(m.rows) if r}
    cols: Dict[int, set] = {}
    for i, r in rows.items():
        for j in r:
            cols.setdefault(j, set()).add(i)

    def set_entry(i: int, j: int, v: int) -> None:
        r = rows.setdefault(i, {})
        if v:
            r[j] = v
            cols.setdefault(j, set()).add(i)
        else:
            r.pop(j, None)
            s = cols.get(j)
            if s is not None:
                s.discard(i)
                if not s:
                    del cols[j]
            if not r:
                del rows[i]

    def row_axpy(target: int, source: int, q: int) -> None:
        # row_target -= q * row_source
        for j, v in list(rows[source].items()):
            set_entry(target, j, rows.get(target, {}).get(j, 0) - q * v)

    def col_axpy(target: int, source: int, q: int) -> None:
        # col_target -= q * col_source
        for i in list(cols.get(source, ())):
            v = rows[i][source]
            set_entry(i, target, rows[i].get(target, 0) - q * v)

    def choose_pivot() -> Tuple[int, int]:
        best = None
        best_key = None
        for i, r in rows.items():
            for j, v in r.items():
                key = (abs(v), (len(r) - 1) * (len(cols[j]) - 1))
                if best_key is None or key < best_key:
                    best, best_key = (i, j), key
                    if key == (1, 0):
                        return best
        assert best is not None
        return best

    diagonal: List[int] = []
    while rows:
        pi, pj = choose_pivot()
        while True:
            p = rows[pi][pj]
            moved = False
            for i in sorted(cols[pj] - {pi}):
                q = rows[i][pj] // p
                row_axpy(i, pi, q)
                if pj in rows.get(i, {}):
                    pi, moved = i, True
                    break
            if moved:
                continue
            p = rows[pi][pj]
            for j in sorted(set(rows[pi]) - {pj}):
                q = rows[pi][j] // p
                col_axpy(j, pj, q)
                if j in rows.get(pi, {}):
                    pj, moved = j, True
                    break
            if moved:
                continue
            break
        diagonal.append(rows[pi][pj])
        set_entry(pi, pj, 0)
    return _invariant_factors(diagonal)


def integer_rank(m: IntMatrix) -> int:
    return len(smith_diagonal(m))


def rational_rank(m: IntMatrix) -> int:
    """Rank over Q by dense Gaussian elimination with exact fractions."""
    a = [[Fraction(v) for v in row] for row in m.to_dense()]
    rank = 0
    ncols = m.ncols
    for c in range(ncols):
        piv = next((r for r in range(rank, len(a)) if a[r][c] != 0), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        for r in range(len(a)):
            if r != rank and a[r][c] != 0:
                f = a[r][c] / a[rank][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[rank])]
        rank += 1
    return rank


def _ext_gcd(a: int, b: int) -> Tuple[int, int, int]:
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


class IntegerLattice:
    """Row span of integer vectors kept in echelon form.

    Rows are keyed by their pivot (leading) column and have positive
    pivots.  :meth:`reduce` returns the canonical representative of a
    vector modulo the lattice: every pivot coordinate is reduced into
    ``[0, pivot)``.
    """

    def __init__(self) -> None:
        self.rows: Dict[int, Row] = {}

    def add(self, vec: Row) -> None:
        v = {j: x for j, x in vec.items() if x}
        while v:
            p = min(v)
            if v[p] < 0:
                v = {j: -x for j, x in v.items()}
            r = self.rows.get(p)
            if r is None:
                self.rows[p] = v
                return
            a, b = r[p], v[p]
            if b % a == 0:
                v = _axpy(v, r, -(b // a))
                continue
            g, s, t = _ext_gcd(a, b)
            new = _axpy(_scale(r, s), v, t)
            rest = _axpy(_scale(v, a // g), r, -(b // g))
            self.rows[p] = new
            v = rest

    def reduce(self, vec: Row) -> Row:
        v = {j: x for j, x in vec.items() if x}
        for p in sorted(self.rows):
            x = v.get(p, 0)
            if not x:
                continue
            r = self.rows[p]
            q = x // r[p]
            if q:
                v = _axpy(v, r, -q)
        return v

    def pivots(self) -> Dict[int, int]:
        return {p: r[p] for p, r in self.rows.items()}

    def __contains__(self, vec: Row) -> bool:
        return not self.reduce(vec)

    def rank(self) -> int:
        return len(self.rows)


def _scale(v: Row, k: int) -> Row:
    return {j: k * x for j, x in v.items() if k * x}


def _axpy(v: Row, w: Row, k: int) -> Row:
    out = dict(v)
    for j, x in w.items():
        y = out.get(j, 0) + k * x
        if y:
            out[j] = y
        else:
            out.pop(j, None)
    return out
