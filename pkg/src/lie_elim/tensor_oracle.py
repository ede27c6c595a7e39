"""The free associative algebra over Z as an independent oracle.

Everything here works on words (tuples of generator ids) and never looks
at Hall-basis rewriting except through :func:`embed`, which uses only
``[u, v] = uv - vu`` on the bracket tree of each basis element.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .core_lie import HallBasis, LieElement, left_normed, rewrite_bracket, _pbw_coeff
from .errors import InvalidArgument
from .zmodule import Lattice, LatticeBuilder

Word = Tuple[int, ...]


class AssocPoly:
    """Sparse integer polynomial in noncommuting letters."""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Mapping[Word, int]] = None):
        self.terms: Dict[Word, int] = {w: c for w, c in (terms or {}).items() if c}

    @classmethod
    def letter(cls, i: int) -> "AssocPoly":
        return cls({(i,): 1})

    @classmethod
    def one(cls) -> "AssocPoly":
        return cls({(): 1})

    def __add__(self, other: "AssocPoly") -> "AssocPoly":
        t = dict(self.terms)
        for w, c in other.terms.items():
            t[w] = t.get(w, 0) + c
        return AssocPoly(t)

    def __sub__(self, other: "AssocPoly") -> "AssocPoly":
        return self + other * -1

    def __neg__(self):
        return self * -1

    def __mul__(self, other) -> "AssocPoly":
        if isinstance(other, int):
            return AssocPoly({w: c * other for w, c in self.terms.items()}) if other else AssocPoly()
        t: Dict[Word, int] = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                t[w] = t.get(w, 0) + c1 * c2
        return AssocPoly(t)

    def __rmul__(self, k: int) -> "AssocPoly":
        return self * k

    def commutator(self, other: "AssocPoly") -> "AssocPoly":
        return self * other - other * self

    def __eq__(self, other):
        if not isinstance(other, AssocPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def lengths(self) -> Tuple[int, ...]:
        return tuple(sorted({len(w) for w in self.terms}))

    def weighted_part(self, d: int, weights: Sequence[int]) -> "AssocPoly":
        return AssocPoly({w: c for w, c in self.terms.items() if sum(weights[i] for i in w) == d})

    def truncate(self, D: int, weights: Optional[Sequence[int]] = None) -> "AssocPoly":
        if weights is None:
            return AssocPoly({w: c for w, c in self.terms.items() if len(w) <= D})
        return AssocPoly({w: c for w, c in self.terms.items() if sum(weights[i] for i in w) <= D})

    def __repr__(self):
        if not self.terms:
            return "0"
        return " ".join(f"{c:+d}*{''.join(map(str, w)) or '1'}" for w, c in sorted(self.terms.items()))


def _tree_poly(basis: HallBasis, g: int, memo: Dict[int, AssocPoly]) -> AssocPoly:
    p = memo.get(g)
    if p is None:
        if basis.letter[g] >= 0:
            p = AssocPoly.letter(basis.letter[g])
        else:
            a = _tree_poly(basis, basis.left[g], memo)
            b = _tree_poly(basis, basis.right[g], memo)
            p = a.commutator(b)
        memo[g] = p
    return p


_EMBED_MEMO: Dict[int, Tuple[HallBasis, Dict[int, AssocPoly]]] = {}


def embed_basis(basis: HallBasis, g: int) -> AssocPoly:
    key = id(basis)
    entry = _EMBED_MEMO.get(key)
    if entry is None or entry[0] is not basis:
        entry = (basis, {})
        _EMBED_MEMO[key] = entry
    return _tree_poly(basis, g, entry[1])


def embed(u: LieElement) -> AssocPoly:
    """Image of ``u`` in the tensor algebra (letters are generator ids)."""
    out: Dict[Word, int] = {}
    for g, c in u.terms.items():
        for w, x in embed_basis(u.basis, g).terms.items():
            out[w] = out.get(w, 0) + c * x
    return AssocPoly(out)


def descent_expand(a: Sequence[AssocPoly]) -> AssocPoly:
    """Sum over descent classes: ``sigma(1) > ... > sigma(k+1) < ... < sigma(n)``, sign ``(-1)^k``."""
    n = len(a)
    if n < 2:
        raise InvalidArgument("descent expansion needs n >= 2")
    total = AssocPoly()
    rest = list(range(1, n))
    for k in range(n):
        for K in itertools.combinations(rest, k):
            comp = [i for i in rest if i not in K]
            order = list(reversed(K)) + [0] + comp
            prod = AssocPoly.one()
            for i in order:
                prod = prod * a[i]
            total = total + prod * (-1) ** k
    return total


def xi_inverse(c: LieElement, factors: Sequence[LieElement]) -> LieElement:
    """``[c, f_1, ..., f_k]`` in Hall coordinates."""
    return left_normed([c, *factors])


def pbw_dim(graded_ranks: Sequence[int], d: int) -> int:
    """Coefficient of ``t^d`` in ``prod_k (1 - t^k)^(-r_k)``; ``graded_ranks[k-1] = r_k``."""
    if d < 0:
        return 0
    return _pbw_coeff([0, *graded_ranks], d)


def split_bracket_rhs(a: LieElement, b: LieElement, c: Sequence[LieElement]) -> LieElement:
    r = len(c)
    total = a.basis.zero()
    for i in range(r + 1):
        for first in itertools.combinations(range(r), i):
            second = [j for j in range(r) if j not in first]
            lhs = left_normed([a, *[c[j] for j in first]])
            rhs = left_normed([b, *[c[j] for j in second]])
            total = total + rewrite_bracket(lhs, rhs)
    return total


def split_bracket_check(a: LieElement, b: LieElement, c: Sequence[LieElement]) -> bool:
    """``[a, b, c_1..c_r]`` against the split-permutation double sum."""
    return left_normed([a, b, *c]) == split_bracket_rhs(a, b, c)


# ---------------------------------------------------------------- Magnus


@dataclass(frozen=True)
class GroupWord:
    syllables: Tuple[Tuple[int, int], ...]

    def __post_init__(self):
        for _, e in self.syllables:
            if e not in (1, -1):
                raise InvalidArgument("exponents must be +1 or -1")

    @classmethod
    def gen(cls, i: int) -> "GroupWord":
        return cls(((i, 1),))

    def inverse(self) -> "GroupWord":
        return GroupWord(tuple((i, -e) for i, e in reversed(self.syllables)))

    def __mul__(self, other: "GroupWord") -> "GroupWord":
        return GroupWord(self.syllables + other.syllables)


def group_commutator(a: GroupWord, b: GroupWord) -> GroupWord:
    """``[a, b] = a^-1 b^-1 a b``."""
    return a.inverse() * b.inverse() * a * b


def group_left_normed(parts: Sequence[GroupWord]) -> GroupWord:
    acc = parts[0]
    for p in parts[1:]:
        acc = group_commutator(acc, p)
    return acc


@dataclass(frozen=True)
class MagnusSeries:
    poly: AssocPoly
    cutoff: int

    def __mul__(self, other: "MagnusSeries") -> "MagnusSeries":
        D = min(self.cutoff, other.cutoff)
        return MagnusSeries(_mul_trunc(self.poly, other.poly, D), D)

    def is_one(self) -> bool:
        return self.poly == AssocPoly.one()


def _mul_trunc(p: AssocPoly, q: AssocPoly, D: int) -> AssocPoly:
    t: Dict[Word, int] = {}
    for w1, c1 in p.terms.items():
        room = D - len(w1)
        for w2, c2 in q.terms.items():
            if len(w2) <= room:
                w = w1 + w2
                t[w] = t.get(w, 0) + c1 * c2
    return AssocPoly(t)


def magnus(w: GroupWord, cutoff: int) -> MagnusSeries:
    if cutoff < 1:
        raise InvalidArgument("cutoff must be >= 1")
    acc = AssocPoly.one()
    for i, e in w.syllables:
        if e == 1:
            s = AssocPoly({(): 1, (i,): 1})
        else:
            s = AssocPoly({(i,) * k: (-1) ** k for k in range(cutoff + 1)})
        acc = _mul_trunc(acc, s, cutoff)
    return MagnusSeries(acc, cutoff)


TRIVIAL_TO_CUTOFF = "trivial-to-cutoff"


def lowest_term(s: MagnusSeries):
    """``(d, part)`` for the smallest positive degree with a nonzero part, else the sentinel."""
    degs = sorted({len(w) for w in s.poly.terms if w})
    if not degs:
        return TRIVIAL_TO_CUTOFF
    d = degs[0]
    return d, AssocPoly({w: c for w, c in s.poly.terms.items() if len(w) == d})


def _word_index(polys: Iterable[AssocPoly]) -> Dict[Word, int]:
    idx: Dict[Word, int] = {}
    for p in polys:
        for w in p.terms:
            if w not in idx:
                idx[w] = len(idx)
    return idx


def lie_lattice(basis: HallBasis, d: int) -> Tuple[Lattice, Dict[Word, int]]:
    """Lattice spanned by the embedded degree-``d`` Hall elements, in word coordinates."""
    polys = [embed_basis(basis, g) for g in basis.indices(d)]
    idx = _word_index(polys)
    b = LatticeBuilder(max(len(idx), 1))
    for p in polys:
        b.add({idx[w]: c for w, c in p.terms.items()})
    return b.lattice(), idx


def is_lie(p: AssocPoly, basis: HallBasis, d: int) -> bool:
    """Whether a homogeneous polynomial lies in the embedded degree-``d`` Lie lattice."""
    lat, idx = lie_lattice(basis, d)
    vec = {}
    for w, c in p.terms.items():
        if w not in idx:
            return False
        vec[idx[w]] = c
    return lat.contains(vec)


def magnus_descent_congruence(a: GroupWord, gs: Sequence[GroupWord], cutoff: Optional[int] = None) -> bool:
    """Compare ``[a,[g_1..g_m]]`` with the signed descent-class product below degree ``m + 2``.

    Each descent class ``sigma(1) > ... > sigma(k+1) < ... < sigma(m)``
    contributes ``[a, g_sigma(1), ..., g_sigma(m)]^((-1)^k)``.
    """
    m = len(gs)
    if m < 1:
        raise InvalidArgument("need at least one g")
    D = m + 1 if cutoff is None else cutoff
    lhs = magnus(group_commutator(a, group_left_normed(list(gs))), D)
    rhs = MagnusSeries(AssocPoly.one(), D)
    rest = list(range(1, m))
    for k in range(m):
        for K in itertools.combinations(rest, k):
            comp = [i for i in rest if i not in K]
            order = list(reversed(K)) + [0] + comp
            w = group_left_normed([a] + [gs[i] for i in order])
            if k % 2:
                w = w.inverse()
            rhs = rhs * magnus(w, D)
    return lhs.poly == rhs.poly
