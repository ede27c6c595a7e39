"""Free Lie algebras over Z on degree-weighted generators.

The basis is the classical Hall basis: a bracket ``[u, v]`` of basis
elements is basic when ``u > v`` and either ``u`` is a generator or
``u = [a, b]`` with ``b <= v``.  Basis elements are ordered by degree
first; inside a degree generators come first (by id), then brackets
ordered by the positions of their left and right factors.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from .errors import DegreeOverflowError, InvalidArgument

sys.setrecursionlimit(max(sys.getrecursionlimit(), 10000))


@dataclass(frozen=True)
class Generator:
    id: int
    name: str
    degree: int = 1

    def __post_init__(self):
        if self.degree < 1:
            raise InvalidArgument(f"generator {self.name!r} has degree {self.degree} < 1")


class Alphabet:
    """Ordered set of generators with dense ids ``0..k-1``."""

    def __init__(self, generators: Iterable[Generator]):
        gens = tuple(generators)
        if not gens:
            raise InvalidArgument("alphabet must be nonempty")
        for i, g in enumerate(gens):
            if g.id != i:
                raise InvalidArgument("generator ids must be 0..k-1 in order")
        names = [g.name for g in gens]
        if len(set(names)) != len(names):
            raise InvalidArgument("generator names must be unique")
        self.generators = gens
        self._by_name = {g.name: g for g in gens}

    @classmethod
    def from_names(cls, names: Sequence[str], degrees: Optional[Sequence[int]] = None) -> "Alphabet":
        if degrees is None:
            degrees = [1] * len(names)
        return cls(Generator(i, n, d) for i, (n, d) in enumerate(zip(names, degrees)))

    @classmethod
    def standard(cls, k: int, prefix: str = "x") -> "Alphabet":
        return cls.from_names([f"{prefix}{i + 1}" for i in range(k)])

    def __len__(self):
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    def __getitem__(self, key: Union[int, str]) -> Generator:
        if isinstance(key, str):
            return self._by_name[key]
        return self.generators[key]

    @property
    def degrees(self) -> Tuple[int, ...]:
        return tuple(g.degree for g in self.generators)

    def __repr__(self):
        return "Alphabet(" + ", ".join(f"{g.name}:{g.degree}" for g in self.generators) + ")"


@dataclass(frozen=True)
class LieMonomial:
    """A bracket tree.  Either ``gen`` is set (a leaf) or both children are."""

    gen: Optional[Generator] = None
    left: Optional["LieMonomial"] = None
    right: Optional["LieMonomial"] = None
    degree: int = field(default=0, compare=False)

    @staticmethod
    def leaf(gen: Generator) -> "LieMonomial":
        return LieMonomial(gen=gen, degree=gen.degree)

    @staticmethod
    def node(left: "LieMonomial", right: "LieMonomial") -> "LieMonomial":
        return LieMonomial(left=left, right=right, degree=left.degree + right.degree)

    @staticmethod
    def left_normed(parts: Sequence["LieMonomial"]) -> "LieMonomial":
        if not parts:
            raise InvalidArgument("empty bracket")
        t = parts[0]
        for p in parts[1:]:
            t = LieMonomial.node(t, p)
        return t

    @property
    def is_leaf(self) -> bool:
        return self.gen is not None

    def leaves(self) -> List[Generator]:
        if self.is_leaf:
            return [self.gen]
        return self.left.leaves() + self.right.leaves()

    def render(self) -> str:
        """Left-normed flattening while right arguments are leaves."""
        if self.is_leaf:
            return self.gen.name
        args = []
        t = self
        while not t.is_leaf and t.right.is_leaf:
            args.append(t.right)
            t = t.left
        if t.is_leaf:
            head = t
        else:
            args.append(t.right)
            head = t.left
        args.reverse()
        return "[" + ",".join([head.render()] + [a.render() for a in args]) + "]"

    def __str__(self):
        return self.render()


class HallBasis:
    """Hall basis of the free Lie algebra on ``alphabet`` up to ``max_degree``.

    Elements are addressed by a global index (position in the total order).
    """

    def __init__(self, alphabet: Alphabet, max_degree: int):
        if max_degree < 1:
            raise InvalidArgument("max_degree must be >= 1")
        self.alphabet = alphabet
        self.max_degree = max_degree
        self.deg: List[int] = []
        self.left: List[int] = []
        self.right: List[int] = []
        self.letter: List[int] = []
        self.start: List[int] = [0] * (max_degree + 2)
        self._pair: Dict[Tuple[int, int], int] = {}
        self._memo: Dict[Tuple[int, int], Dict[int, int]] = {}
        self._monomials: Dict[int, LieMonomial] = {}
        self._build()

    def _build(self):
        D = self.max_degree
        by_degree: List[List[int]] = [[] for _ in range(D + 1)]
        for d in range(1, D + 1):
            self.start[d] = len(self.deg)
            for g in self.alphabet:
                if g.degree == d:
                    self._append(d, -1, -1, g.id)
            cands = []
            for p in range(1, d):
                q = d - p
                for u in by_degree[p]:
                    ru = self.right[u]
                    for v in by_degree[q]:
                        if u > v and (ru < 0 or ru <= v):
                            cands.append((u, v))
            cands.sort()
            for u, v in cands:
                self._pair[(u, v)] = len(self.deg)
                self._append(d, u, v, -1)
            by_degree[d] = list(range(self.start[d], len(self.deg)))
        self.start[D + 1] = len(self.deg)

    def _append(self, d, u, v, letter):
        self.deg.append(d)
        self.left.append(u)
        self.right.append(v)
        self.letter.append(letter)

    # --- shape ---------------------------------------------------------
    def __len__(self):
        return len(self.deg)

    def rank(self, d: int) -> int:
        if not 1 <= d <= self.max_degree:
            raise InvalidArgument(f"degree {d} outside 1..{self.max_degree}")
        return self.start[d + 1] - self.start[d]

    def indices(self, d: int) -> range:
        if not 1 <= d <= self.max_degree:
            return range(0)
        return range(self.start[d], self.start[d + 1])

    def local(self, g: int) -> int:
        return g - self.start[self.deg[g]]

    def global_index(self, d: int, i: int) -> int:
        return self.start[d] + i

    def generator_index(self, gen: Union[int, str, Generator]) -> int:
        if not isinstance(gen, Generator):
            gen = self.alphabet[gen]
        if gen.degree > self.max_degree:
            raise DegreeOverflowError(gen.degree, self.max_degree)
        for g in self.indices(gen.degree):
            if self.letter[g] == gen.id:
                return g
        raise KeyError(gen)

    def monomial(self, g: int) -> LieMonomial:
        m = self._monomials.get(g)
        if m is None:
            if self.letter[g] >= 0:
                m = LieMonomial.leaf(self.alphabet[self.letter[g]])
            else:
                m = LieMonomial.node(self.monomial(self.left[g]), self.monomial(self.right[g]))
            self._monomials[g] = m
        return m

    @property
    def per_degree(self) -> List[List[LieMonomial]]:
        """``per_degree[d]`` lists the degree-``d`` basis monomials (index 0 is empty)."""
        return [[]] + [[self.monomial(g) for g in self.indices(d)] for d in range(1, self.max_degree + 1)]

    def is_basic_pair(self, u: int, v: int) -> bool:
        return (u, v) in self._pair

    def letter_content(self, g: int) -> Tuple[int, ...]:
        """Sorted generator ids occurring in basis element ``g``."""
        if self.letter[g] >= 0:
            return (self.letter[g],)
        return tuple(sorted(self.letter_content(self.left[g]) + self.letter_content(self.right[g])))

    # --- rewriting -----------------------------------------------------
    def bracket_indices(self, i: int, j: int) -> Dict[int, int]:
        """``[b_i, b_j]`` in Hall coordinates.  The returned dict must not be mutated."""
        d = self.deg[i] + self.deg[j]
        if d > self.max_degree:
            raise DegreeOverflowError(d, self.max_degree)
        key = (i, j)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        if i == j:
            res: Dict[int, int] = {}
        elif i < j:
            res = {k: -c for k, c in self.bracket_indices(j, i).items()}
        else:
            p = self._pair.get(key)
            if p is not None:
                res = {p: 1}
            else:
                # i = [a, b] with b > j:  [[a,b],j] = [[a,j],b] + [a,[b,j]]
                a, b = self.left[i], self.right[i]
                res = {}
                for k, c in self.bracket_indices(a, j).items():
                    _acc(res, self.bracket_indices(k, b), c)
                for k, c in self.bracket_indices(b, j).items():
                    _acc(res, self.bracket_indices(a, k), c)
        self._memo[key] = res
        return res

    # --- element constructors ------------------------------------------
    def element(self, terms: Mapping[int, int]) -> "LieElement":
        return LieElement(self, {k: c for k, c in terms.items() if c})

    def gen(self, key: Union[int, str, Generator]) -> "LieElement":
        return LieElement(self, {self.generator_index(key): 1})

    def gens(self) -> List["LieElement"]:
        return [self.gen(g) for g in self.alphabet if g.degree <= self.max_degree]

    def basis_element(self, d: int, i: int) -> "LieElement":
        return LieElement(self, {self.global_index(d, i): 1})

    def zero(self) -> "LieElement":
        return LieElement(self, {})

    def from_vector(self, d: int, vec: Mapping[int, int]) -> "LieElement":
        s = self.start[d]
        return LieElement(self, {s + i: c for i, c in vec.items() if c})

    def evaluate(self, tree: LieMonomial) -> "LieElement":
        """Value of an arbitrary bracket tree over this alphabet."""
        if tree.is_leaf:
            return self.gen(tree.gen.id)
        return rewrite_bracket(self.evaluate(tree.left), self.evaluate(tree.right))

    def __repr__(self):
        return f"HallBasis({self.alphabet!r}, D={self.max_degree}, ranks={[self.rank(d) for d in range(1, self.max_degree + 1)]})"


def _acc(target: Dict[int, int], src: Mapping[int, int], c: int) -> None:
    for k, x in src.items():
        v = target.get(k, 0) + c * x
        if v:
            target[k] = v
        else:
            target.pop(k, None)


class LieElement:
    """Sparse integer combination of Hall basis elements."""

    __slots__ = ("basis", "terms")

    def __init__(self, basis: HallBasis, terms: Dict[int, int]):
        self.basis = basis
        self.terms = terms

    @property
    def coeffs(self) -> Dict[Tuple[int, int], int]:
        b = self.basis
        return {(b.deg[g], b.local(g)): c for g, c in self.terms.items()}

    def degrees(self) -> Tuple[int, ...]:
        return tuple(sorted({self.basis.deg[g] for g in self.terms}))

    @property
    def degree(self) -> int:
        """Degree of a nonzero homogeneous element."""
        ds = self.degrees()
        if len(ds) != 1:
            raise InvalidArgument("element is zero or not homogeneous")
        return ds[0]

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) == 1

    def component(self, d: int) -> "LieElement":
        return LieElement(self.basis, {g: c for g, c in self.terms.items() if self.basis.deg[g] == d})

    def vector(self, d: Optional[int] = None) -> Dict[int, int]:
        """Coordinates (local index -> coefficient) of the degree-``d`` part."""
        if d is None:
            d = self.degree
        s = self.basis.start[d]
        return {g - s: c for g, c in self.terms.items() if self.basis.deg[g] == d}

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def _check(self, other: "LieElement"):
        if other.basis is not self.basis:
            raise InvalidArgument("elements live over different Hall bases")

    def __add__(self, other: "LieElement") -> "LieElement":
        self._check(other)
        t = dict(self.terms)
        _acc(t, other.terms, 1)
        return LieElement(self.basis, t)

    def __sub__(self, other: "LieElement") -> "LieElement":
        self._check(other)
        t = dict(self.terms)
        _acc(t, other.terms, -1)
        return LieElement(self.basis, t)

    def __neg__(self) -> "LieElement":
        return LieElement(self.basis, {g: -c for g, c in self.terms.items()})

    def __mul__(self, k: int) -> "LieElement":
        if not k:
            return LieElement(self.basis, {})
        return LieElement(self.basis, {g: k * c for g, c in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, LieElement):
            return NotImplemented
        return self.basis is other.basis and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for g in sorted(self.terms):
            c = self.terms[g]
            parts.append(f"{c:+d}*{self.basis.monomial(g).render()}")
        return " ".join(parts)


def hall_basis(alphabet: Alphabet, max_degree: int) -> HallBasis:
    return HallBasis(alphabet, max_degree)


def rewrite_bracket(u: LieElement, v: LieElement) -> LieElement:
    """``[u, v]`` in Hall coordinates; raises on degree overflow."""
    u._check(v)
    b = u.basis
    out: Dict[int, int] = {}
    for i, a in u.terms.items():
        for j, c in v.terms.items():
            _acc(out, b.bracket_indices(i, j), a * c)
    return LieElement(b, out)


def left_normed(gens: Sequence[LieElement]) -> LieElement:
    if not gens:
        raise InvalidArgument("left_normed needs at least one element")
    acc = gens[0]
    for g in gens[1:]:
        acc = rewrite_bracket(acc, g)
    return acc


def graded_rank(basis: HallBasis, d: int) -> int:
    return basis.rank(d)


@lru_cache(maxsize=None)
def mobius(n: int) -> int:
    result, m, p = 1, n, 2
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            result = -result
        p += 1
    if m > 1:
        result = -result
    return result


def witt_necklace(k: int, d: int) -> int:
    """Rank of the degree-``d`` part of the free Lie algebra on ``k`` degree-1 generators."""
    if d < 1:
        raise InvalidArgument("degree must be >= 1")
    total = sum(mobius(d // e) * k ** e for e in range(1, d + 1) if d % e == 0)
    return total // d


def weighted_witt(degrees: Sequence[int], max_degree: int) -> List[int]:
    """Ranks ``r_1..r_D`` solving  prod (1 - t^d)^(-r_d) = 1 / (1 - sum t^deg(g)).

    Returned list has index 0 unused (set to 0).
    """
    D = max_degree
    # coefficients of 1/(1 - sum t^deg)
    target = [0] * (D + 1)
    target[0] = 1
    for n in range(1, D + 1):
        target[n] = sum(target[n - e] for e in degrees if e <= n)
    ranks = [0] * (D + 1)
    for d in range(1, D + 1):
        ranks[d] = target[d] - _pbw_coeff(ranks, d)
    return ranks


def _pbw_coeff(ranks: Sequence[int], n: int) -> int:
    # coefficient of t^n in prod_{k<len(ranks)} (1-t^k)^(-ranks[k]), exact integers
    poly = [0] * (n + 1)
    poly[0] = 1
    for k in range(1, min(len(ranks) - 1, n) + 1):
        r = ranks[k]
        if not r:
            continue
        # multiply by (1 - t^k)^(-r) = sum_j C(r+j-1, j) t^{jk}
        new = [0] * (n + 1)
        for i, a in enumerate(poly):
            if not a:
                continue
            j, binom = 0, 1
            while i + j * k <= n:
                new[i + j * k] += a * binom
                j += 1
                binom = binom * (r + j - 1) // j
        poly = new
    return poly[n]


class LieHom:
    """Lie homomorphism from a free Lie algebra into another, fixed on generators."""

    def __init__(self, source: HallBasis, target: HallBasis, images: Sequence[LieElement]):
        if len(images) != len(source.alphabet):
            raise InvalidArgument("need one image per source generator")
        for im in images:
            if im.basis is not target:
                raise InvalidArgument("images must live over the target basis")
        self.source = source
        self.target = target
        self.images = list(images)
        self._cache: Dict[int, LieElement] = {}

    def on_basis(self, g: int) -> LieElement:
        hit = self._cache.get(g)
        if hit is None:
            s = self.source
            if s.letter[g] >= 0:
                hit = self.images[s.letter[g]]
            else:
                hit = rewrite_bracket(self.on_basis(s.left[g]), self.on_basis(s.right[g]))
            self._cache[g] = hit
        return hit

    def __call__(self, u: LieElement) -> LieElement:
        out: Dict[int, int] = {}
        for g, c in u.terms.items():
            _acc(out, self.on_basis(g).terms, c)
        return LieElement(self.target, out)


def substitute(u: LieElement, target: HallBasis, images: Sequence[LieElement]) -> LieElement:
    return LieHom(u.basis, target, images)(u)


@dataclass
class FreeSubalgebra:
    """Degree-truncated Hall basis of the Lie subalgebra generated by homogeneous elements.

    ``elements[d]`` are the images in the ambient algebra of the abstract
    Hall monomials of degree ``d`` on the generators; ``trees[d]`` the
    matching bracket trees over the ambient alphabet (for display).
    """

    ambient: HallBasis
    generators: List[LieElement]
    generator_trees: List[LieMonomial]
    abstract: Optional[HallBasis]
    elements: Dict[int, List[LieElement]]
    trees: Dict[int, List[LieMonomial]]

    def rank_bound(self, d: int) -> int:
        return len(self.elements.get(d, ()))

    def vectors(self, d: int) -> List[Dict[int, int]]:
        return [e.vector(d) for e in self.elements.get(d, ())]

    def all_elements(self) -> List[Tuple[int, LieElement, LieMonomial]]:
        out = []
        for d in sorted(self.elements):
            for e, t in zip(self.elements[d], self.trees[d]):
                out.append((d, e, t))
        return out


def free_subalgebra(ambient: HallBasis, generators: Sequence[LieElement],
                    trees: Optional[Sequence[LieMonomial]] = None,
                    max_degree: Optional[int] = None) -> FreeSubalgebra:
    """Hall basis (on the given generators, kept in the given order) evaluated in ``ambient``.

    Generators must be nonzero and homogeneous; they are taken in the
    order supplied, which should already be degree-sorted.
    """
    D = ambient.max_degree if max_degree is None else max_degree
    gens = [g for g in generators if g.degree <= D]
    if trees is None:
        trees = [None] * len(generators)
    tr = [t for g, t in zip(generators, trees) if g.degree <= D]
    elements: Dict[int, List[LieElement]] = {d: [] for d in range(1, D + 1)}
    out_trees: Dict[int, List[LieMonomial]] = {d: [] for d in range(1, D + 1)}
    if not gens:
        return FreeSubalgebra(ambient, [], [], None, elements, out_trees)
    alpha = Alphabet(Generator(i, f"g{i}", g.degree) for i, g in enumerate(gens))
    abstract = HallBasis(alpha, D)
    hom = LieHom(abstract, ambient, gens)
    for d in range(1, D + 1):
        for g in abstract.indices(d):
            elements[d].append(hom.on_basis(g))
            out_trees[d].append(_graft(abstract.monomial(g), tr))
    return FreeSubalgebra(ambient, gens, tr, abstract, elements, out_trees)


def _graft(m: LieMonomial, trees: Sequence[Optional[LieMonomial]]) -> Optional[LieMonomial]:
    if m.is_leaf:
        return trees[m.gen.id]
    l, r = _graft(m.left, trees), _graft(m.right, trees)
    if l is None or r is None:
        return None
    return LieMonomial.node(l, r)
