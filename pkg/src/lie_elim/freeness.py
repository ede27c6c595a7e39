"""Degree-wise checks that ``I / [I, I]`` is a free U(L/I)-module on the relators."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

from .core_lie import HallBasis, LieElement, rewrite_bracket, weighted_witt
from .pcommute import GradedIdeal, ideal_generate
from .tensor_oracle import pbw_dim
from .zmodule import Lattice, LatticeBuilder, relative_saturated


def gamma2(I: GradedIdeal, D: Optional[int] = None) -> GradedIdeal:
    """``[I, I]`` degree-wise: span of ``[u, v]`` over lattice bases of ``I^p`` and ``I^q``."""
    basis = I.ambient
    D = I.max_degree if D is None else D
    rows: Dict[int, List[LieElement]] = {d: I.elements(d) for d in range(1, D + 1)}
    per: Dict[int, Lattice] = {}
    for d in range(2, D + 1):
        b = LatticeBuilder(basis.rank(d))
        for p in range(1, d // 2 + 1):
            q = d - p
            for i, u in enumerate(rows[p]):
                for j, v in enumerate(rows[q]):
                    if p == q and j <= i:
                        continue
                    b.add(rewrite_bracket(u, v).vector(d))
        if b.rank:
            per[d] = b.lattice()
    return GradedIdeal(basis, per, D)


@dataclass
class FreenessRow:
    degree: int
    actual: int
    predicted: int
    surjective: bool
    saturated: bool

    @property
    def ok(self) -> bool:
        return self.actual == self.predicted and self.surjective and self.saturated


@dataclass
class FreenessReport:
    rows: List[FreenessRow]
    quotient_ranks: List[int]
    precondition: bool
    notes: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.precondition and all(r.ok for r in self.rows)

    def row(self, d: int) -> FreenessRow:
        return self.rows[d - 1]


def check_freeness(L_basis: HallBasis, I: GradedIdeal, relators: Sequence[LieElement], D: Optional[int] = None,
                   ad_generators: Optional[Sequence[LieElement]] = None) -> FreenessReport:
    """Compare ``rank I^d - rank [I,I]^d`` with ``sum_r pbw_dim(L/I, d - deg r)``.

    Also checks that relator ad-words span ``I^d`` modulo ``[I,I]^d``
    (surjectivity) and that ``[I,I]^d`` is a direct summand of ``I^d``.
    A relator set that does not regenerate ``I`` exactly fails the
    precondition, and then every degree is reported as failing.
    """
    D = I.max_degree if D is None else D
    witt = weighted_witt(L_basis.alphabet.degrees, D)
    quotient = [witt[d] - I.rank(d) for d in range(1, D + 1)]
    G2 = gamma2(I, D)
    generated = ideal_generate(L_basis, relators, D, ad_generators)
    precondition = generated == I
    notes = [] if precondition else ["relators do not generate the given ideal"]
    rel_degrees = [r.degree for r in relators if not r.is_zero()]
    rows = []
    for d in range(1, D + 1):
        lat, g2 = I.lattice(d), G2.lattice(d)
        actual = lat.rank - g2.rank
        predicted = sum(pbw_dim(quotient, d - e) for e in rel_degrees if e <= d)
        surj = (generated.lattice(d) + g2) == lat
        sat = relative_saturated(g2, lat)
        rows.append(FreenessRow(d, actual, predicted, surj and precondition, sat))
    return FreenessReport(rows, quotient, precondition, notes)
