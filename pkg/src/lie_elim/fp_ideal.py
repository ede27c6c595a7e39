"""The relator ideal J of the Formanek-Procesi group over a raag.

Alphabet ``A = (y_1, ..., y_n, s)`` with ids ``0..n-1`` for the ``y`` and
``n`` for ``s``; all of degree 1.  The weighted alphabet
``Omega = (s, w_1, ..., w_n)`` has ``s`` of degree 1 (id 0) and ``w_i`` of
degree 2 (id ``i``).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .core_lie import (
    Alphabet,
    Generator,
    HallBasis,
    LieElement,
    LieHom,
    LieMonomial,
    free_subalgebra,
    left_normed,
    rewrite_bracket,
    weighted_witt,
)
from .errors import InapplicableError, InvalidArgument
from .pcommute import (
    Check,
    GradedIdeal,
    PartialCommutation,
    Piece,
    coordinate_sublattice,
    eliminate,
    ideal_generate,
    pbw_words,
    raag_ideal,
    raag_ranks,
    validate,
    wreath,
    _piece,
)
from .tensor_oracle import GroupWord, group_commutator, group_left_normed
from .zmodule import Lattice, is_saturated, sum_rank


@dataclass
class FPPresentation:
    theta: PartialCommutation

    def __post_init__(self):
        if self.theta.n < 2:
            raise InvalidArgument("the presentation needs n >= 2")
        if not self.theta.is_empty and not self.theta.commutes(2, 1):
            self.theta = validate(self.theta)

    @classmethod
    def from_edges(cls, n: int, edges) -> "FPPresentation":
        return cls(validate(n, edges))

    @property
    def n(self) -> int:
        return self.theta.n

    @property
    def alphabet(self) -> Alphabet:
        return Alphabet.from_names(self.theta.names() + ["s"])

    def basis(self, D: int) -> HallBasis:
        # relators reach degree 4, so the ambient cutoff never drops below that
        return HallBasis(self.alphabet, max(D, 4))


@dataclass
class Relator:
    family: str
    lie: LieElement
    tree: LieMonomial
    word: GroupWord

    @property
    def degree(self) -> int:
        return self.lie.degree


@dataclass
class RelatorSets:
    R2: List[Relator]
    R3: List[Relator]
    R4: List[Relator]

    def all(self) -> List[Relator]:
        return self.R2 + self.R3 + self.R4


def fp_relators(p: FPPresentation, basis: Optional[HallBasis] = None) -> RelatorSets:
    if basis is None:
        basis = p.basis(4)
    n = p.n
    y = [basis.gen(i) for i in range(n)]
    s = basis.gen(n)
    ty = [LieMonomial.leaf(basis.alphabet[i]) for i in range(n)]
    ts = LieMonomial.leaf(basis.alphabet[n])
    gy = [GroupWord.gen(i) for i in range(n)]
    gt = GroupWord.gen(n)
    R2, R3, R4 = [], [], []
    for a, b in p.theta.delta:
        i, j = a - 1, b - 1
        R2.append(Relator("R2", rewrite_bracket(y[i], y[j]), LieMonomial.node(ty[i], ty[j]),
                          group_commutator(gy[i], gy[j])))
        R4.append(Relator("R4", rewrite_bracket(rewrite_bracket(s, y[i]), rewrite_bracket(s, y[j])),
                          LieMonomial.node(LieMonomial.node(ts, ty[i]), LieMonomial.node(ts, ty[j])),
                          group_commutator(group_commutator(gt, gy[i]), group_commutator(gt, gy[j]))))
    for i in range(n):
        for j in range(n):
            R3.append(Relator("R3", left_normed([s, y[i], y[j]]), LieMonomial.left_normed([ts, ty[i], ty[j]]),
                              group_left_normed([gt, gy[i], gy[j]])))
    return RelatorSets(R2, R3, R4)


# ------------------------------------------------------------------ Omega


class OmegaAlgebra:
    """Free Lie algebra on ``s`` (degree 1) and ``w_1..w_n`` (degree 2)."""

    def __init__(self, p: FPPresentation, D: int):
        self.presentation = p
        self.n = p.n
        names = ["s"] + [f"w{l}" for l in p.theta.labels]
        self.alphabet = Alphabet(Generator(i, nm, 1 if i == 0 else 2) for i, nm in enumerate(names))
        self.max_degree = D
        self.basis = HallBasis(self.alphabet, D)

    def relators(self) -> List[LieElement]:
        b = self.basis
        return [rewrite_bracket(b.gen(a), b.gen(c)) for a, c in self.presentation.theta.delta
                if b.max_degree >= 4]

    def ideal(self) -> GradedIdeal:
        return ideal_generate(self.basis, self.relators(), self.max_degree)

    def psi(self, source: HallBasis) -> LieHom:
        """``y_i -> w_i``, ``s -> s`` from L(A) (cutoff halved suitably) into L(Omega)."""
        b = self.basis
        n = self.n
        return LieHom(source, b, [b.gen(i + 1) for i in range(n)] + [b.gen(0)])

    def embedding(self, target: HallBasis) -> LieHom:
        """``s -> s``, ``w_i -> [s, y_i]`` into L(A)."""
        n = self.n
        s = target.gen(n)
        return LieHom(self.basis, target, [s] + [rewrite_bracket(s, target.gen(i)) for i in range(n)])


def psi_map(u: LieElement, omega: OmegaAlgebra) -> LieElement:
    return omega.psi(u.basis)(u)


def _psi_inside(basis: HallBasis, n: int) -> LieHom:
    """``psi`` realised inside L(A): ``y_i -> [s, y_i]``, ``s -> s``."""
    s = basis.gen(n)
    return LieHom(basis, basis, [rewrite_bracket(s, basis.gen(i)) for i in range(n)] + [s])


# ------------------------------------------------------------------ reports


@dataclass
class FPRow:
    degree: int
    witt: int
    rank_J: int
    rank_gr: int
    saturated: bool
    split_ok: Optional[bool] = None
    pieces: Dict[str, int] = field(default_factory=dict)
    pieces_ok: Optional[bool] = None


@dataclass
class FPReport:
    presentation: FPPresentation
    max_degree: int
    rows: List[FPRow]
    checks: List[Check] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def row(self, d: int) -> FPRow:
        return self.rows[d - 1]


def fp_ideal(p: FPPresentation, D: int, basis: Optional[HallBasis] = None) -> Tuple[HallBasis, GradedIdeal]:
    if basis is None:
        basis = p.basis(D)
    rel = fp_relators(p, basis)
    return basis, ideal_generate(basis, [r.lie for r in rel.all()], D)


def fp_graded_ranks(p: FPPresentation, D: int, pieces: bool = True) -> FPReport:
    """Ranks and saturation of ``J^d``, the quotient ranks, and the splitting check.

    With ``pieces`` the direct-sum decomposition of ``J`` is verified
    too (or the empty-relation identity when theta is empty).
    """
    if D < 1:
        raise InvalidArgument("D must be >= 1")
    basis, J = fp_ideal(p, D)
    rows = []
    split = corollary_split(p, D, J=J, basis=basis)
    checks: List[Check] = []
    for d in range(1, D + 1):
        lat = J.lattice(d)
        sat = is_saturated(lat)
        rows.append(FPRow(d, basis.rank(d), lat.rank, basis.rank(d) - lat.rank, sat, split[d]))
        checks.append(Check(f"J^{d} saturated", sat))
        checks.append(Check(f"gr_{d} splits as raag + Omega quotient", split[d]))
    checks.append(Check("J^1 = 0 and gr_1 has rank n+1", J.rank(1) == 0 and rows[0].rank_gr == p.n + 1))
    if pieces and D >= 2:
        if p.theta.is_empty:
            rep = theta_empty_case(p.n, D)
            for d in range(1, D + 1):
                rows[d - 1].pieces = rep.pieces[d]
                rows[d - 1].pieces_ok = rep.ok_by_degree[d]
            checks += rep.checks
        else:
            dec = decompose_J(p, D, J=J, basis=basis)
            for d in range(1, D + 1):
                rows[d - 1].pieces = dec.ranks[d]
                rows[d - 1].pieces_ok = dec.ok_by_degree[d]
            checks += dec.checks
    checks += relator_provenance(p, D=max(D, 4))
    return FPReport(p, D, rows, checks)


def corollary_split(p: FPPresentation, D: int, J: Optional[GradedIdeal] = None,
                    basis: Optional[HallBasis] = None) -> Dict[int, bool]:
    """``rank gr_d(FP) == raag_d + rank_d(L(Omega)/I_Omega)`` for ``d = 1..D``."""
    if J is None:
        basis, J = fp_ideal(p, D, basis)
    raag = raag_ranks(p.theta, D)
    om = OmegaAlgebra(p, D)
    I_om = om.ideal()
    w = weighted_witt(om.alphabet.degrees, D)
    out = {}
    for d in range(1, D + 1):
        out[d] = basis.rank(d) - J.rank(d) == raag[d - 1] + (w[d] - I_om.rank(d))
    return out


def relator_provenance(p: FPPresentation, D: int = 5) -> List[Check]:
    """Lowest Magnus term of each group relator equals the embedded Lie relator."""
    from .tensor_oracle import embed, lowest_term, magnus

    basis = p.basis(D)
    checks = []
    for r in fp_relators(p, basis).all():
        lt = lowest_term(magnus(r.word, D))
        ok = lt != "trivial-to-cutoff" and lt[0] == r.degree and lt[1] == embed(r.lie)
        checks.append(Check(f"Magnus lowest term of {r.family} {r.tree.render()}", ok))
    return checks


# ---------------------------------------------------------------- theta = {}


@dataclass
class PieceReport:
    pieces: Dict[int, Dict[str, int]]
    ok_by_degree: Dict[int, bool]
    checks: List[Check]

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)


def theta_empty_case(n: int, D: int) -> PieceReport:
    """``L(A) = L(Y) + L(Omega) + J`` with ``J`` generated by the ``[s, y_i, y_j]``."""
    p = FPPresentation(validate(n, ()))
    basis = p.basis(D)
    rel = fp_relators(p, basis)
    J = ideal_generate(basis, [r.lie for r in rel.R3], D)
    om = OmegaAlgebra(p, D)
    emb = om.embedding(basis)
    w_om = weighted_witt(om.alphabet.degrees, D)
    pieces, ok_by, checks = {}, {}, []
    for d in range(1, D + 1):
        dim = basis.rank(d)
        y_cols = coordinate_sublattice(basis, d, range(n))
        LY = Lattice.span(dim, [{c: 1} for c in y_cols])
        LO = Lattice.span(dim, [emb.on_basis(g).vector(d) for g in om.basis.indices(d)])
        Jd = J.lattice(d)
        total, direct = sum_rank([LY, LO, Jd])
        full = total == dim and (LY + LO + Jd) == Lattice.full(dim)
        ranks_ok = LY.rank == len(y_cols) and LO.rank == w_om[d]
        pieces[d] = {"L(Y)": LY.rank, "L(Omega)": LO.rank, "J": Jd.rank}
        ok_by[d] = direct and full and ranks_ok
        checks.append(Check(f"L(A) = L(Y) + L(Omega) + J, direct [d={d}]", ok_by[d],
                            f"{dim} = {LY.rank} + {LO.rank} + {Jd.rank}"))
    return PieceReport(pieces, ok_by, checks)


# ----------------------------------------------------------- decomposition


PIECE_ORDER = ("gamma2(L(Y2))", "gamma2(L(Omega2))", "L(D_j)", "L(psi(D_j))", "L(P'_Omega0 wr P''_Omega0)",
               "L(E wr Omega)")


@dataclass
class Decomposition(PieceReport):
    lattices: Dict[int, Dict[str, Lattice]] = field(default_factory=dict)

    @property
    def ranks(self) -> Dict[int, Dict[str, int]]:
        return self.pieces


def decompose_J(p: FPPresentation, D: int, J: Optional[GradedIdeal] = None,
                basis: Optional[HallBasis] = None) -> Decomposition:
    """Build every summand of J as a lattice per degree and check the direct sum."""
    if p.theta.is_empty:
        raise InapplicableError("theta is empty; use theta_empty_case")
    if D < 2:
        raise InvalidArgument("decompose_J needs D >= 2")
    if J is None:
        basis, J = fp_ideal(p, D, basis)
    n = p.n
    rel = fp_relators(p, basis)
    elim = eliminate(p.theta, D, basis=basis, verify=False)
    psi = _psi_inside(basis, n)

    # psi-images of the ordered basis of L(Y), kept up to degree D - 1
    ordered = elim.ordered_basis()
    mo = []
    for kind, d, e, t in ordered:
        if 2 * d <= D - 1:
            mo.append((kind, 2 * d, psi(e), _psi_tree(t, basis, n)))
    s = basis.gen(n)
    ts = LieMonomial.leaf(basis.alphabet[n])
    p_prime, p_dd = [], []
    for word in pbw_words(mo, D - 1):
        seq = [mo[i] for i in word]
        val = left_normed([s] + [f[2] for f in seq])
        tree = LieMonomial.left_normed([ts] + [f[3] for f in seq])
        (p_prime if any(f[0] == "I" for f in seq) else p_dd).append((val, tree))
    wr = _piece("L(P'_Omega0 wr P''_Omega0)", "I", basis, wreath(p_prime, p_dd, D), D)
    pdd_piece = _piece("L(P''_Omega0)", "B", basis, p_dd, D)

    E = ideal_generate(basis, [r.lie for r in rel.R3], D)
    Y_ideal = elim.ideal_pieces()
    B_pieces = [s_.B for s_ in elim.steps]

    def psi_lattice(piece: Piece, d: int) -> Lattice:
        dim = basis.rank(d)
        if d % 2:
            return Lattice.zero(dim)
        return Lattice.span(dim, [psi(e).vector(d) for e in piece.sub.elements.get(d // 2, ())])

    def psi_count(piece: Piece, d: int) -> int:
        return piece.count(d // 2) if d % 2 == 0 else 0

    pieces, ok_by, lats, checks = {}, {}, {}, []
    for d in range(1, D + 1):
        dim = basis.rank(d)
        named: Dict[str, List[Lattice]] = {
            "gamma2(L(Y2))": [Y_ideal[0].lattice(d)],
            "gamma2(L(Omega2))": [psi_lattice(Y_ideal[0], d)],
            "L(D_j)": [pc.lattice(d) for pc in Y_ideal[1:]],
            "L(psi(D_j))": [psi_lattice(pc, d) for pc in Y_ideal[1:]],
            "L(P'_Omega0 wr P''_Omega0)": [wr.lattice(d)],
            "L(E wr Omega)": [E.lattice(d)],
        }
        counts = {
            "gamma2(L(Y2))": [Y_ideal[0].count(d)],
            "gamma2(L(Omega2))": [psi_count(Y_ideal[0], d)],
            "L(D_j)": [pc.count(d) for pc in Y_ideal[1:]],
            "L(psi(D_j))": [psi_count(pc, d) for pc in Y_ideal[1:]],
            "L(P'_Omega0 wr P''_Omega0)": [wr.count(d)],
            "L(E wr Omega)": [E.rank(d)],
        }
        flat = [l for k in PIECE_ORDER for l in named[k]]
        total, direct = sum_rank(flat)
        stacked = Lattice.span(dim, [r for l in flat for r in l.vectors()])
        Jd = J.lattice(d)
        free_ok = all(l.rank == c for k in PIECE_ORDER for l, c in zip(named[k], counts[k]))
        pieces[d] = {k: sum(l.rank for l in named[k]) for k in PIECE_ORDER}
        lats[d] = {k: Lattice.span(dim, [r for l in named[k] for r in l.vectors()]) for k in PIECE_ORDER}
        ok = direct and total == Jd.rank and stacked == Jd and free_ok
        ok_by[d] = ok
        checks.append(Check(f"J = direct sum of the six piece families [d={d}]", ok,
                            f"sum {total} vs rank J {Jd.rank}, direct={direct}, free={free_ok}"))

        # the complementary half: L(A) = <Y> + <Omega0> + L(B_j) + L(psi B_j) + L(P''_Omega0) + J
        y_lat = Lattice.span(dim, [{basis.local(basis.generator_index(i)): 1} for i in range(n)]) if d == 1 \
            else Lattice.zero(dim)
        o0 = Lattice.span(dim, [rewrite_bracket(s, basis.gen(i)).vector(2) for i in range(n)]) if d == 2 \
            else Lattice.zero(dim)
        comp = [y_lat, o0] + [b.lattice(d) for b in B_pieces] + [psi_lattice(b, d) for b in B_pieces] \
            + [pdd_piece.lattice(d)]
        ctot, cdirect = sum_rank(comp + [Jd])
        whole = Lattice.span(dim, [r for l in comp + [Jd] for r in l.vectors()]) == Lattice.full(dim)
        checks.append(Check(f"L(A) = complement + J, direct and spanning [d={d}]", cdirect and whole,
                            f"{ctot} vs {dim}"))

        # J cap L(Y) equals the raag ideal of L(Y)
        ycols = coordinate_sublattice(basis, d, range(n))
        inter = Jd.restrict(ycols)
        checks.append(Check(f"J cap L(Y) equals the raag ideal [d={d}]", inter == elim.ideal.lattice(d)))

    # the Omega-side pieces agree with I_Omega built in the weighted alphabet
    om = OmegaAlgebra(p, D)
    I_om = om.ideal()
    emb = om.embedding(basis)
    for d in range(1, D + 1):
        dim = basis.rank(d)
        side = lats[d]["gamma2(L(Omega2))"] + lats[d]["L(psi(D_j))"] + lats[d]["L(P'_Omega0 wr P''_Omega0)"]
        img = Lattice.span(dim, [emb(om.basis.from_vector(d, r)).vector(d) for r in I_om.lattice(d).vectors()])
        checks.append(Check(f"Omega-side pieces equal the image of I_Omega [d={d}]", side == img))
    return Decomposition(pieces, ok_by, checks, lats)


def _psi_tree(t: LieMonomial, basis: HallBasis, n: int) -> LieMonomial:
    if t.is_leaf:
        if t.gen.id == n:
            return t
        return LieMonomial.node(LieMonomial.leaf(basis.alphabet[n]), t)
    return LieMonomial.node(_psi_tree(t.left, basis, n), _psi_tree(t.right, basis, n))


def y_restriction_check(p: FPPresentation, D: int) -> Dict[int, bool]:
    """``J cap L(Y)`` (lattice intersection) equals the raag ideal, degree-wise."""
    basis, J = fp_ideal(p, D)
    n = p.n
    I = raag_ideal(p.theta, D, basis)
    out = {}
    for d in range(1, D + 1):
        cols = coordinate_sublattice(basis, d, range(n))
        out[d] = J.lattice(d).restrict(cols) == I.lattice(d)
    return out
