"""Partial commutation relations, raag ideals and the elimination algorithm.

Vertices are 1-based in user-facing data.  Inside the algebra vertex
``i`` is generator id ``i - 1``.  :func:`validate` may relabel vertices so
that ``(2, 1)`` is an edge; generator names keep the original labels, so
everything printed is already in the caller's numbering.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .core_lie import (
    Alphabet,
    FreeSubalgebra,
    HallBasis,
    LieElement,
    LieMonomial,
    free_subalgebra,
    left_normed,
    rewrite_bracket,
)
from .errors import InapplicableError, InvalidArgument, TorsionError
from .zmodule import Lattice, LatticeBuilder, is_saturated, sum_rank

Pair = Tuple[int, int]


@dataclass(frozen=True)
class PartialCommutation:
    """Symmetric irreflexive relation on ``1..n``.

    ``labels[i - 1]`` is the original name of vertex ``i`` (identity unless
    :func:`validate` relabelled).
    """

    n: int
    pairs: frozenset = frozenset()
    labels: Tuple[int, ...] = ()

    def __post_init__(self):
        if self.n < 1:
            raise InvalidArgument("need at least one vertex")
        if not self.labels:
            object.__setattr__(self, "labels", tuple(range(1, self.n + 1)))
        for a, b in self.pairs:
            if not (1 <= a <= self.n and 1 <= b <= self.n):
                raise InvalidArgument(f"pair ({a},{b}) outside 1..{self.n}")
            if a == b:
                raise InvalidArgument(f"self-loop ({a},{a}) not allowed")
            if (b, a) not in self.pairs:
                raise InvalidArgument("relation is not symmetric; use validate()")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Pair]) -> "PartialCommutation":
        return validate(n, edges, relabel=False)

    @property
    def delta(self) -> List[Pair]:
        """The selection ``{(a, b) : a > b}``, sorted."""
        return sorted((a, b) for a, b in self.pairs if a > b)

    @property
    def is_empty(self) -> bool:
        return not self.pairs

    def commutes(self, a: int, b: int) -> bool:
        return (a, b) in self.pairs

    def restrict(self, k: int) -> "PartialCommutation":
        """The relation induced on the first ``k`` vertices."""
        return PartialCommutation(k, frozenset((a, b) for a, b in self.pairs if a <= k and b <= k),
                                  self.labels[:k])

    def names(self, prefix: str = "y") -> List[str]:
        return [f"{prefix}{l}" for l in self.labels]

    def original_edges(self) -> List[Pair]:
        return sorted((max(self.labels[a - 1], self.labels[b - 1]), min(self.labels[a - 1], self.labels[b - 1]))
                      for a, b in self.delta)

    def __le__(self, other: "PartialCommutation") -> bool:
        return self.n == other.n and self.pairs <= other.pairs


def validate(n_or_theta, edges: Optional[Iterable[Pair]] = None, relabel: bool = True) -> PartialCommutation:
    """Symmetric closure, self-loop rejection and (optionally) relabelling so that (2,1) is an edge.

    Accepts either ``validate(theta)`` or ``validate(n, edges)``.
    """
    if isinstance(n_or_theta, PartialCommutation):
        n, edges, labels = n_or_theta.n, list(n_or_theta.pairs), n_or_theta.labels
    else:
        n, edges, labels = int(n_or_theta), list(edges or ()), tuple(range(1, int(n_or_theta) + 1))
    pairs = set()
    for a, b in edges:
        if a == b:
            raise InvalidArgument(f"self-loop ({a},{b}) not allowed")
        if not (1 <= a <= n and 1 <= b <= n):
            raise InvalidArgument(f"pair ({a},{b}) outside 1..{n}")
        pairs.add((a, b))
        pairs.add((b, a))
    if not relabel or not pairs:
        return PartialCommutation(n, frozenset(pairs), labels)
    a, b = min((p for p in pairs if p[0] > p[1]))
    order = [b, a] + [v for v in range(1, n + 1) if v not in (a, b)]
    new_of = {old: new for new, old in enumerate(order, start=1)}
    new_pairs = frozenset((new_of[x], new_of[y]) for x, y in pairs)
    return PartialCommutation(n, new_pairs, tuple(labels[old - 1] for old in order))


# ------------------------------------------------------------------ ideals


@dataclass
class GradedIdeal:
    """Degree-wise lattices, in local Hall coordinates of ``ambient``."""

    ambient: HallBasis
    per_degree: Dict[int, Lattice]
    max_degree: int

    def lattice(self, d: int) -> Lattice:
        lat = self.per_degree.get(d)
        if lat is None:
            return Lattice.zero(self.ambient.rank(d))
        return lat

    def rank(self, d: int) -> int:
        return self.lattice(d).rank

    def ranks(self) -> List[int]:
        return [self.rank(d) for d in range(1, self.max_degree + 1)]

    def elements(self, d: int) -> List[LieElement]:
        return [self.ambient.from_vector(d, r) for r in self.lattice(d).vectors()]

    def contains(self, u: LieElement) -> bool:
        return all(self.lattice(d).contains(u.vector(d)) for d in u.degrees())

    def __eq__(self, other):
        if not isinstance(other, GradedIdeal):
            return NotImplemented
        D = min(self.max_degree, other.max_degree)
        return all(self.lattice(d) == other.lattice(d) for d in range(1, D + 1))

    def __le__(self, other: "GradedIdeal") -> bool:
        D = min(self.max_degree, other.max_degree)
        return all(other.lattice(d).contains_lattice(self.lattice(d)) for d in range(1, D + 1))


def ideal_generate(basis: HallBasis, gens: Sequence[LieElement], D: Optional[int] = None,
                   ad_generators: Optional[Sequence[LieElement]] = None) -> GradedIdeal:
    """Ideal generated by homogeneous elements, truncated at degree ``D``.

    Degree ``d`` is spanned by the generators of degree ``d`` and the
    brackets of degree ``d - e`` rows with degree-``e`` alphabet
    generators.  Generators above ``D`` cannot reach degrees ``<= D`` and
    are ignored.  ``ad_generators`` restricts the closure to a
    subalgebra (for instance L(Y) inside L(A)).
    """
    if D is None:
        D = basis.max_degree
    if D > basis.max_degree:
        raise InvalidArgument("D exceeds the basis cutoff")
    by_deg: Dict[int, List[LieElement]] = {}
    for g in gens:
        if g.is_zero():
            continue
        if not g.is_homogeneous():
            raise InvalidArgument("ideal generators must be homogeneous")
        if g.degree <= D:
            by_deg.setdefault(g.degree, []).append(g)
    ads = basis.gens() if ad_generators is None else list(ad_generators)
    per: Dict[int, Lattice] = {}
    for d in range(1, D + 1):
        b = LatticeBuilder(basis.rank(d))
        for g in by_deg.get(d, ()):
            b.add(g.vector(d))
        for a in ads:
            e = a.degree
            if e >= d or d - e not in per:
                continue
            for row in per[d - e].vectors():
                u = basis.from_vector(d - e, row)
                b.add(rewrite_bracket(u, a).vector(d))
        if b.rank:
            per[d] = b.lattice()
    return GradedIdeal(basis, per, D)


def y_alphabet(theta: PartialCommutation) -> Alphabet:
    return Alphabet.from_names(theta.names())


def raag_relators(basis: HallBasis, theta: PartialCommutation, upto: Optional[int] = None) -> List[LieElement]:
    """``[y_a, y_b]`` for ``(a, b)`` in the delta-selection (restricted to vertices ``<= upto``)."""
    k = theta.n if upto is None else upto
    if basis.max_degree < 2:
        return []
    return [rewrite_bracket(basis.gen(a - 1), basis.gen(b - 1)) for a, b in theta.delta if a <= k]


def raag_ideal(theta: PartialCommutation, D: int, basis: Optional[HallBasis] = None,
               upto: Optional[int] = None) -> GradedIdeal:
    """Ideal of L(Y_k) generated by the raag relators on the first ``k`` vertices."""
    if basis is None:
        basis = HallBasis(y_alphabet(theta), D)
    k = theta.n if upto is None else upto
    ads = [basis.gen(i) for i in range(k)]
    return ideal_generate(basis, raag_relators(basis, theta, k), D, ad_generators=ads)


def raag_ranks(theta: PartialCommutation, D: int) -> List[int]:
    """Ranks of ``L(Y)/I`` in degrees ``1..D``; raises :class:`TorsionError` if a quotient has torsion."""
    basis = HallBasis(y_alphabet(theta), D)
    I = raag_ideal(theta, D, basis)
    out = []
    for d in range(1, D + 1):
        lat = I.lattice(d)
        if not is_saturated(lat):
            raise TorsionError(f"L/I has torsion in degree {d}")
        out.append(basis.rank(d) - lat.rank)
    return out


def coordinate_sublattice(basis: HallBasis, d: int, letters: Iterable[int]) -> List[int]:
    """Local indices of degree-``d`` Hall elements whose letters all lie in ``letters``."""
    allowed = set(letters)
    s = basis.start[d]
    return [g - s for g in basis.indices(d) if set(basis.letter_content(g)) <= allowed]


# ------------------------------------------------------------- elimination


def rearrange(word: Sequence[int], theta: PartialCommutation, nxt: int) -> Tuple[int, ...]:
    """Stably move letters ``j`` with ``(nxt, j)`` in the delta-selection to the front.

    ``word`` is a non-decreasing sequence of 1-based vertex labels.
    """
    word = tuple(word)
    if any(word[i] > word[i + 1] for i in range(len(word) - 1)):
        raise InvalidArgument("rearrange expects a sorted power word")
    front = tuple(j for j in word if nxt > j and theta.commutes(nxt, j))
    back = tuple(j for j in word if not (nxt > j and theta.commutes(nxt, j)))
    return front + back


@dataclass
class Piece:
    """Named ordered generating set and the evaluated Hall basis it spans."""

    name: str
    kind: str  # "Y", "B", "I"
    sub: FreeSubalgebra

    def elements(self, max_degree: Optional[int] = None) -> List[Tuple[int, LieElement, LieMonomial]]:
        return [t for t in self.sub.all_elements() if max_degree is None or t[0] <= max_degree]

    def generating_set(self) -> List[Tuple[int, LieMonomial]]:
        return [(g.degree, t) for g, t in zip(self.sub.generators, self.sub.generator_trees)]

    def lattice(self, d: int) -> Lattice:
        return Lattice.span(self.sub.ambient.rank(d), self.sub.vectors(d))

    def count(self, d: int) -> int:
        return self.sub.rank_bound(d)


@dataclass
class EliminationStep:
    kappa: int
    split: Dict[int, Tuple[int, int, int]]  # degree r of [y_{k+1}; u] -> (|P'_1|, |P'_2|, |P''|)
    B: Piece
    D: Piece


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class EliminationReport:
    theta: PartialCommutation
    max_degree: int
    basis: HallBasis
    gamma2_y2: Piece
    steps: List[EliminationStep]
    ideal: GradedIdeal
    checks: List[Check] = field(default_factory=list)

    @property
    def B(self) -> Dict[int, Piece]:
        return {s.kappa + 1: s.B for s in self.steps}

    @property
    def D(self) -> Dict[int, Piece]:
        return {s.kappa + 1: s.D for s in self.steps}

    def ideal_pieces(self) -> List[Piece]:
        return [self.gamma2_y2] + [s.D for s in self.steps]

    def ordered_basis(self, max_degree: Optional[int] = None) -> List[Tuple[str, int, LieElement, LieMonomial]]:
        """The ordered basis ``Y < M_B3 < ... < M_Bn < M'_Y2 < M_D3 < ...`` of L(Y)."""
        return _ordered_basis(self.basis, self.theta.n, [s.B for s in self.steps],
                              self.ideal_pieces(), max_degree)

    def rank_table(self) -> Dict[int, Dict[str, int]]:
        out = {}
        n = self.theta.n
        for d in range(1, self.max_degree + 1):
            row = {"witt": len(coordinate_sublattice(self.basis, d, range(n))),
                   "Y": n if d == 1 else 0}
            for s in self.steps:
                row[s.B.name] = s.B.lattice(d).rank
            row["I"] = self.ideal.rank(d)
            for p in self.ideal_pieces():
                row[p.name] = p.lattice(d).rank
            out[d] = row
        return out

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)


def _ordered_basis(basis: HallBasis, k: int, Bs: Sequence[Piece], Is: Sequence[Piece],
                   max_degree: Optional[int]) -> List[Tuple[str, int, LieElement, LieMonomial]]:
    out = []
    for i in range(k):
        gen = basis.alphabet[i]
        out.append(("Y", 1, basis.gen(i), LieMonomial.leaf(gen)))
    for p in Bs:
        out += [("B", d, e, t) for d, e, t in p.elements(max_degree)]
    for p in Is:
        out += [("I", d, e, t) for d, e, t in p.elements(max_degree)]
    return out


def pbw_words(factors: Sequence[Tuple[str, int, LieElement, LieMonomial]], max_degree: int):
    """Non-decreasing index sequences of total degree ``<= max_degree`` (empty word included)."""
    degs = [f[1] for f in factors]

    def rec(start: int, room: int, prefix: Tuple[int, ...]):
        yield prefix
        for i in range(start, len(factors)):
            if degs[i] <= room:
                yield from rec(i, room - degs[i], prefix + (i,))

    yield from rec(0, max_degree, ())


def wreath(heads: Sequence[Tuple[LieElement, LieMonomial]], tails: Sequence[Tuple[LieElement, LieMonomial]],
           max_degree: int) -> List[Tuple[LieElement, LieMonomial]]:
    """``{[c, b_1, ..., b_k] : c in heads, b_i in tails, k >= 0}`` up to ``max_degree``, degree-sorted."""
    out = []
    frontier = [(c, t) for c, t in heads if c.degree <= max_degree]
    while frontier:
        out += frontier
        nxt = []
        for c, t in frontier:
            for b, bt in tails:
                if c.degree + b.degree <= max_degree:
                    nxt.append((rewrite_bracket(c, b), LieMonomial.node(t, bt)))
        frontier = nxt
    out.sort(key=lambda ct: ct[0].degree)
    return out


def _piece(name: str, kind: str, basis: HallBasis, items: Sequence[Tuple[LieElement, LieMonomial]],
           D: int) -> Piece:
    items = sorted(items, key=lambda ct: ct[0].degree)
    sub = free_subalgebra(basis, [c for c, _ in items], [t for _, t in items], max_degree=D)
    return Piece(name, kind, sub)


def gamma2_y2_generators(basis: HallBasis, D: int) -> List[Tuple[LieElement, LieMonomial]]:
    """``[y2, y1, _a y1, _b y2]`` for ``2 + a + b <= D``."""
    y1, y2 = basis.gen(0), basis.gen(1)
    t1, t2 = LieMonomial.leaf(basis.alphabet[0]), LieMonomial.leaf(basis.alphabet[1])
    out = []
    for d in range(2, D + 1):
        for a in range(d - 1):
            b = d - 2 - a
            parts = [y2, y1] + [y1] * a + [y2] * b
            trees = [t2, t1] + [t1] * a + [t2] * b
            out.append((left_normed(parts), LieMonomial.left_normed(trees)))
    return out


def eliminate(theta: PartialCommutation, D: int, basis: Optional[HallBasis] = None,
              verify: bool = True, rule: str = "content") -> EliminationReport:
    """Run the elimination induction and (optionally) verify every step degree-wise.

    ``basis`` may be any Hall basis whose first ``n`` generators are the
    vertices (e.g. the alphabet with an extra letter s appended).

    ``rule`` picks which factors of a PBW word count as commuting with
    the new letter ``y_{k+1}``.  ``"letters"`` moves only single letters
    ``y_j`` with ``(k+1, j)`` an edge, as in the textbook statement.
    ``"content"`` (default) also moves non-ideal basis elements whose
    letters all commute with ``y_{k+1}``; such an element ``v`` gives
    ``[y_{k+1}, v]`` inside the ideal, so leaving it in P'' breaks the
    decomposition (the 4-cycle is the smallest example).
    """
    if rule not in ("content", "letters"):
        raise InvalidArgument(f"unknown rule {rule!r}")
    if theta.is_empty:
        raise InapplicableError("theta is empty: the ideal is zero and elimination does not apply")
    if not theta.commutes(2, 1):
        theta = validate(theta)
    if D < 2:
        raise InvalidArgument("eliminate needs D >= 2")
    n = theta.n
    if basis is None:
        basis = HallBasis(y_alphabet(theta), D)
    if basis.max_degree < D:
        raise InvalidArgument("basis cutoff below D")

    g2 = _piece("gamma2(L(Y2))", "I", basis, gamma2_y2_generators(basis, D), D)
    report = EliminationReport(theta, D, basis, g2, [], raag_ideal(theta, D, basis))
    if verify:
        report.checks += _verify_level(report, 2)

    for kappa in range(2, n):
        Bs = [s.B for s in report.steps]
        Is = report.ideal_pieces()
        factors = _ordered_basis(basis, kappa, Bs, Is, D - 1)
        nxt = kappa + 1
        y_next = basis.gen(kappa)
        t_next = LieMonomial.leaf(basis.alphabet[kappa])
        p_prime: List[Tuple[LieElement, LieMonomial]] = []
        p_dd: List[Tuple[LieElement, LieMonomial]] = []
        split: Dict[int, List[int]] = {}
        link = {j for j in range(1, nxt) if theta.commutes(nxt, j)}
        commuting = [f[0] != "I" and (f[0] == "Y" or rule == "content") and _content(f[3]) <= link
                     for f in factors]
        for word in pbw_words(factors, D - 1):
            front = [factors[i] for i in word if commuting[i]]
            seq = front + [factors[i] for i in word if not commuting[i]]
            val = left_normed([y_next] + [f[2] for f in seq])
            tree = LieMonomial.left_normed([t_next] + [f[3] for f in seq])
            r = 1 + sum(f[1] for f in seq)
            cell = split.setdefault(r, [0, 0, 0])
            if front:
                cell[0] += 1
                p_prime.append((val, tree))
            elif any(f[0] == "I" for f in seq):
                cell[1] += 1
                p_prime.append((val, tree))
            else:
                cell[2] += 1
                if word:
                    p_dd.append((val, tree))
        B_items = wreath(p_dd, [(y_next, t_next)], D)
        D_items = wreath(p_prime, [(y_next, t_next)] + p_dd, D)
        step = EliminationStep(
            kappa,
            {r: tuple(v) for r, v in sorted(split.items())},
            _piece(f"L(B{nxt})", "B", basis, B_items, D),
            _piece(f"L(D{nxt})", "I", basis, D_items, D),
        )
        report.steps.append(step)
        if verify:
            report.checks += _verify_level(report, nxt)
    return report


def _content(tree: LieMonomial) -> set:
    return {g.id + 1 for g in tree.leaves()}


def _verify_level(report: EliminationReport, k: int) -> List[Check]:
    """Checks for L(Y_k) = <Y_k> + L(B_3..B_k) + I_{Y_k} at every degree."""
    basis, D, theta = report.basis, report.max_degree, report.theta
    Bs = [s.B for s in report.steps if s.kappa + 1 <= k]
    Is = [report.gamma2_y2] + [s.D for s in report.steps if s.kappa + 1 <= k]
    Ik = raag_ideal(theta, D, basis, upto=k)
    checks = []
    for d in range(1, D + 1):
        dim = basis.rank(d)
        full_cols = coordinate_sublattice(basis, d, range(k))
        witt = len(full_cols)
        y_lat = Lattice.span(dim, [{basis.local(basis.generator_index(i)): 1} for i in range(k)]) if d == 1 \
            else Lattice.zero(dim)
        b_lats = [p.lattice(d) for p in Bs]
        i_lats = [p.lattice(d) for p in Is]
        free_ok = all(l.rank == p.count(d) for l, p in zip(b_lats + i_lats, Bs + Is))
        total, direct = sum_rank([y_lat] + b_lats + i_lats)
        i_sum = Lattice.span(dim, [r for l in i_lats for r in l.vectors()])
        stacked = Lattice.span(dim, [r for l in [y_lat] + b_lats + i_lats for r in l.vectors()])
        full = Lattice.span(dim, [{c: 1} for c in full_cols])
        ident = y_lat.rank + sum(l.rank for l in b_lats) + Ik.rank(d) == witt
        tag = f"Y{k} d={d}"
        checks.append(Check(f"pieces are free on their generators [{tag}]", free_ok))
        checks.append(Check(f"rank identity <Y>+L(B)+I = Witt [{tag}]", ident,
                            f"{y_lat.rank}+{sum(l.rank for l in b_lats)}+{Ik.rank(d)} vs {witt}"))
        checks.append(Check(f"direct sum spans L(Y{k}) [{tag}]", direct and total == witt and stacked == full))
        checks.append(Check(f"ideal pieces equal generated ideal [{tag}]", i_sum == Ik.lattice(d),
                            f"{i_sum.rank} vs {Ik.rank(d)}"))
    return checks
