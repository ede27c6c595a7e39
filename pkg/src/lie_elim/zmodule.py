"""Exact integer linear algebra on sparse vectors.

Vectors are dicts ``{column: nonzero int}``.  A :class:`Lattice` is a
row lattice in canonical Hermite normal form: pivots positive, entries
above each pivot reduced into ``[0, pivot)``.  Two lattices in the same
ambient space are equal iff their canonical rows are equal.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

SparseVec = Dict[int, int]


def xgcd(a: int, b: int) -> Tuple[int, int, int]:
    """Return ``(g, s, t)`` with ``s*a + t*b == g == gcd(a, b) >= 0``."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        return -a, -s0, -t0
    return a, s0, t0


def _axpy(v: SparseVec, q: int, row: SparseVec, touched=None) -> None:
    # v -= q * row, in place
    for c, x in row.items():
        nv = v.get(c, 0) - q * x
        if nv:
            if touched is not None and c not in v:
                touched(c)
            v[c] = nv
        else:
            v.pop(c, None)


def _combine(a: int, u: SparseVec, b: int, w: SparseVec) -> SparseVec:
    out: SparseVec = {}
    if a:
        for c, x in u.items():
            out[c] = a * x
    if b:
        for c, x in w.items():
            nv = out.get(c, 0) + b * x
            if nv:
                out[c] = nv
            else:
                out.pop(c, None)
    return out


def to_sparse(vec: Sequence[int]) -> SparseVec:
    return {i: int(x) for i, x in enumerate(vec) if x}


def to_dense(vec: SparseVec, dim: int) -> List[int]:
    out = [0] * dim
    for c, x in vec.items():
        out[c] = x
    return out


class LatticeBuilder:
    """Incremental echelon form over the integers.

    Rows are kept in echelon form (one row per pivot column) but not fully
    reduced; :meth:`lattice` produces the canonical HNF.
    """

    def __init__(self, dim: int):
        self.dim = dim
        self.pivots: Dict[int, SparseVec] = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def add(self, vec) -> bool:
        """Add a vector to the span.  Returns True if the lattice changed."""
        if not isinstance(vec, dict):
            vec = to_sparse(vec)
        v = {c: x for c, x in vec.items() if x}
        if not v:
            return False
        pivots = self.pivots
        heap = list(v)
        heapq.heapify(heap)
        queued = set(heap)

        def push(c):
            if c not in queued:
                queued.add(c)
                heapq.heappush(heap, c)

        lead = None
        changed = False
        while heap:
            c = heapq.heappop(heap)
            queued.discard(c)
            x = v.get(c, 0)
            if not x:
                continue
            row = pivots.get(c)
            if row is None:
                if lead is None:
                    lead = c
                continue
            p = row[c]
            if lead is not None:
                q = x // p
                if q:
                    _axpy(v, q, row, push)
                continue
            q, r = divmod(x, p)
            if r == 0:
                _axpy(v, q, row, push)
                continue
            # unimodular 2x2 step on (row, v)
            g, s, t = xgcd(p, x)
            new_row = _combine(s, row, t, v)
            w = _combine(x // g, row, -(p // g), v)
            pivots[c] = new_row
            changed = True
            v = w
            heap = [k for k in v if k > c]
            heapq.heapify(heap)
            queued = set(heap)
        if lead is None:
            return changed
        if v[lead] < 0:
            v = {c: -x for c, x in v.items()}
        pivots[lead] = v
        return True

    def extend(self, vecs: Iterable) -> "LatticeBuilder":
        for v in vecs:
            self.add(v)
        return self

    def lattice(self) -> "Lattice":
        rows = {c: dict(r) for c, r in self.pivots.items()}
        order = sorted(rows)
        # column index: col -> pivots of rows with an entry there
        colidx: Dict[int, set] = {}
        for pc, r in rows.items():
            for c in r:
                colidx.setdefault(c, set()).add(pc)
        for pc in order:
            r = rows[pc]
            if r[pc] < 0:
                for c in r:
                    r[c] = -r[c]
            p = r[pc]
            for other in sorted(colidx.get(pc, ())):
                if other >= pc:
                    continue
                o = rows[other]
                q = o.get(pc, 0) // p
                if not q:
                    continue
                before = set(o)
                _axpy(o, q, r)
                for c in set(o) - before:
                    colidx.setdefault(c, set()).add(other)
                for c in before - set(o):
                    colidx[c].discard(other)
        return Lattice(self.dim, tuple((pc, rows[pc]) for pc in order))


@dataclass(frozen=True)
class Lattice:
    """Sublattice of ``Z^dim`` in canonical Hermite normal form."""

    dim: int
    rows: Tuple[Tuple[int, SparseVec], ...] = ()
    _pivot_map: Dict[int, SparseVec] = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_pivot_map", dict(self.rows))

    @classmethod
    def span(cls, dim: int, vecs: Iterable) -> "Lattice":
        return LatticeBuilder(dim).extend(vecs).lattice()

    @classmethod
    def zero(cls, dim: int) -> "Lattice":
        return cls(dim, ())

    @classmethod
    def full(cls, dim: int) -> "Lattice":
        return cls(dim, tuple((i, {i: 1}) for i in range(dim)))

    @property
    def rank(self) -> int:
        return len(self.rows)

    @property
    def pivot_columns(self) -> Tuple[int, ...]:
        return tuple(pc for pc, _ in self.rows)

    def vectors(self) -> List[SparseVec]:
        return [r for _, r in self.rows]

    def dense(self) -> List[List[int]]:
        return [to_dense(r, self.dim) for _, r in self.rows]

    def key(self) -> Tuple:
        return tuple(tuple(sorted(r.items())) for _, r in self.rows)

    def __eq__(self, other):
        if not isinstance(other, Lattice):
            return NotImplemented
        return self.dim == other.dim and self.key() == other.key()

    def __hash__(self):
        return hash((self.dim, self.key()))

    def coordinates(self, vec) -> Optional[Dict[int, int]]:
        """Integer coefficients of ``vec`` on the rows (keyed by row position), or None."""
        if not isinstance(vec, dict):
            vec = to_sparse(vec)
        v = {c: x for c, x in vec.items() if x}
        pos = {pc: i for i, (pc, _) in enumerate(self.rows)}
        out: Dict[int, int] = {}
        while v:
            c = min(v)
            row = self._pivot_map.get(c)
            if row is None:
                return None
            q, r = divmod(v[c], row[c])
            if r:
                return None
            out[pos[c]] = q
            _axpy(v, q, row)
        return out

    def contains(self, vec) -> bool:
        return self.coordinates(vec) is not None

    __contains__ = contains

    def contains_lattice(self, other: "Lattice") -> bool:
        return all(self.contains(r) for r in other.vectors())

    def __add__(self, other: "Lattice") -> "Lattice":
        b = LatticeBuilder(self.dim)
        b.extend(self.vectors())
        b.extend(other.vectors())
        return b.lattice()

    def restrict(self, keep: Iterable[int]) -> "Lattice":
        """Intersection with the coordinate sublattice on the columns ``keep``."""
        keep = sorted(set(keep))
        drop = [c for c in range(self.dim) if c not in set(keep)]
        perm = {c: i for i, c in enumerate(drop + keep)}
        inv = {i: c for c, i in perm.items()}
        b = LatticeBuilder(self.dim)
        for r in self.vectors():
            b.add({perm[c]: x for c, x in r.items()})
        cut = len(drop)
        out = LatticeBuilder(self.dim)
        for pc, r in b.pivots.items():
            if pc >= cut:
                out.add({inv[c]: x for c, x in r.items()})
        return out.lattice()


@dataclass(frozen=True)
class IntMatrix:
    """Sparse integer matrix; ``entries`` maps ``(row, col)`` to a nonzero int."""

    rows: int
    cols: int
    entries: Dict[Tuple[int, int], int] = field(default_factory=dict)

    def __post_init__(self):
        for (i, j), x in self.entries.items():
            if not (0 <= i < self.rows and 0 <= j < self.cols):
                raise IndexError((i, j))
            if x == 0:
                raise ValueError("stored zero entry")

    @classmethod
    def from_dense(cls, data: Sequence[Sequence[int]], cols: int = None) -> "IntMatrix":
        data = [list(r) for r in data]
        if cols is None:
            cols = len(data[0]) if data else 0
        ent = {(i, j): int(x) for i, r in enumerate(data) for j, x in enumerate(r) if x}
        return cls(len(data), cols, ent)

    @classmethod
    def from_sparse_rows(cls, rows: Sequence[SparseVec], cols: int) -> "IntMatrix":
        ent = {(i, j): x for i, r in enumerate(rows) for j, x in r.items() if x}
        return cls(len(rows), cols, ent)

    def sparse_rows(self) -> List[SparseVec]:
        out: List[SparseVec] = [dict() for _ in range(self.rows)]
        for (i, j), x in self.entries.items():
            out[i][j] = x
        return out


def hnf(m) -> Lattice:
    """Canonical row Hermite normal form of an :class:`IntMatrix` or list of rows."""
    if isinstance(m, IntMatrix):
        return Lattice.span(m.cols, m.sparse_rows())
    m = [list(r) for r in m]
    return Lattice.span(len(m[0]) if m else 0, m)


def _smith_dense(a: List[List[int]]) -> List[int]:
    a = [list(r) for r in a]
    nr = len(a)
    nc = len(a[0]) if nr else 0
    divisors = []
    t = 0
    while t < min(nr, nc):
        best = None
        for i in range(t, nr):
            for j in range(t, nc):
                x = a[i][j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
                    if best[0] == 1:
                        break
            if best and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        a[t], a[i] = a[i], a[t]
        for r in a:
            r[t], r[j] = r[j], r[t]
        while True:
            p = a[t][t]
            dirty = False
            for i in range(t + 1, nr):
                if a[i][t]:
                    q = a[i][t] // p
                    if q:
                        ri, rt = a[i], a[t]
                        for j in range(t, nc):
                            ri[j] -= q * rt[j]
                    if a[i][t]:
                        dirty = True
            for j in range(t + 1, nc):
                if a[t][j]:
                    q = a[t][j] // p
                    if q:
                        for r in a:
                            r[j] -= q * r[t]
                    if a[t][j]:
                        dirty = True
            if dirty:
                # bring the smallest remaining entry of row/column t to the pivot
                cands = [(abs(a[i][t]), i, t) for i in range(t, nr) if a[i][t]]
                cands += [(abs(a[t][j]), t, j) for j in range(t, nc) if a[t][j]]
                _, i, j = min(cands)
                a[t], a[i] = a[i], a[t]
                for r in a:
                    r[t], r[j] = r[j], r[t]
                continue
            bad = None
            for i in range(t + 1, nr):
                for j in range(t + 1, nc):
                    if a[i][j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            for j in range(t, nc):
                a[t][j] += a[bad][j]
        divisors.append(abs(a[t][t]))
        t += 1
    return divisors


def snf(m) -> Tuple[int, ...]:
    """Elementary divisors ``d1 | d2 | ...`` (positive, length = rank)."""
    lat = m if isinstance(m, Lattice) else hnf(m)
    ones = 0
    rest = []
    for pc, r in lat.rows:
        if r[pc] == 1:
            ones += 1
        else:
            rest.append(r)
    if not rest:
        return (1,) * ones
    cols = sorted({c for r in rest for c in r})
    idx = {c: i for i, c in enumerate(cols)}
    dense = []
    for r in rest:
        row = [0] * len(cols)
        for c, x in r.items():
            row[idx[c]] = x
        dense.append(row)
    divs = sorted(_smith_dense(dense))
    return (1,) * ones + tuple(divs)


def is_saturated(sub: Lattice) -> bool:
    """True iff ``Z^dim / sub`` is torsion-free."""
    return all(d == 1 for d in snf(sub))


def member(v, sub: Lattice) -> bool:
    return sub.contains(v)


def sum_rank(subs: Sequence[Lattice]) -> Tuple[int, bool]:
    """Rank of the sum and whether the sum is direct."""
    if not subs:
        return 0, True
    b = LatticeBuilder(subs[0].dim)
    for s in subs:
        b.extend(s.vectors())
    total = b.rank
    return total, total == sum(s.rank for s in subs)


intersect_trivial = sum_rank


def relative_saturated(sub: Lattice, sup: Lattice) -> bool:
    """True iff ``sub <= sup`` and ``sup / sub`` is torsion-free."""
    coords = []
    for r in sub.vectors():
        c = sup.coordinates(r)
        if c is None:
            return False
        coords.append(c)
    return is_saturated(Lattice.span(sup.rank, coords))
