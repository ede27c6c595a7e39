"""Seeded verification suite aggregating the module-level invariants."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable, List, Optional

from .core_lie import Alphabet, HallBasis, LieElement, left_normed, rewrite_bracket
from .fp_ideal import (
    FPPresentation,
    OmegaAlgebra,
    corollary_split,
    decompose_J,
    fp_ideal,
    fp_relators,
    relator_provenance,
    theta_empty_case,
)
from .freeness import FreenessReport, check_freeness
from .pcommute import Check, PartialCommutation, eliminate, ideal_generate, raag_ideal, raag_relators
from .tensor_oracle import (
    AssocPoly,
    GroupWord,
    descent_expand,
    embed,
    magnus_descent_congruence,
    split_bracket_check,
)
from .zmodule import is_saturated


@dataclass
class Section:
    title: str
    checks: List[Check] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failed(self) -> List[Check]:
        return [c for c in self.checks if not c.passed]


@dataclass
class SuiteResult:
    sections: List[Section]

    @property
    def ok(self) -> bool:
        return all(s.ok for s in self.sections)

    @property
    def total(self) -> int:
        return sum(len(s.checks) for s in self.sections)

    @property
    def passed(self) -> int:
        return sum(c.passed for s in self.sections for c in s.checks)


def random_element(basis: HallBasis, d: int, rng: random.Random, terms: int = 3, bound: int = 3) -> LieElement:
    """A random homogeneous element of degree ``d`` with small coefficients."""
    idx = list(basis.indices(d))
    pick = rng.sample(idx, min(terms, len(idx)))
    return basis.element({g: rng.choice([c for c in range(-bound, bound + 1) if c]) for g in pick})


def random_assoc(k: int, rng: random.Random, max_len: int = 2, terms: int = 2) -> AssocPoly:
    out = AssocPoly()
    for _ in range(terms):
        w = tuple(rng.randrange(k) for _ in range(rng.randint(1, max_len)))
        out = out + AssocPoly({w: rng.choice([-2, -1, 1, 2])})
    return out


def random_group_word(k: int, rng: random.Random, length: int = 2) -> GroupWord:
    return GroupWord(tuple((rng.randrange(k), rng.choice((1, -1))) for _ in range(length)))


def _degrees_summing(total: int, parts: int, rng: random.Random) -> List[int]:
    cuts = sorted(rng.sample(range(1, total), parts - 1))
    return [b - a for a, b in zip([0] + cuts, cuts + [total])]


# ----------------------------------------------------------------- identities


def jacobi_checks(count: int, rng: random.Random, k: int = 3, D: int = 6) -> List[Check]:
    """Jacobi in Hall coordinates plus agreement of brackets with ``uv - vu``."""
    basis = HallBasis(Alphabet.standard(k), D)
    checks = []
    for i in range(count):
        total = rng.randint(3, D)
        da, db, dc = _degrees_summing(total, 3, rng)
        a, b, c = (random_element(basis, x, rng) for x in (da, db, dc))
        jac = left_normed([a, b, c]) + left_normed([b, c, a]) + left_normed([c, a, b])
        br = rewrite_bracket(a, b)
        oracle = embed(br) == embed(a).commutator(embed(b))
        checks.append(Check(f"Jacobi and oracle #{i}", jac.is_zero() and oracle,
                            f"degrees {da},{db},{dc}"))
    return checks


def split_bracket_checks(count: int, rng: random.Random, k: int = 3, D: int = 7) -> List[Check]:
    basis = HallBasis(Alphabet.standard(k), D)
    checks = []
    for i in range(count):
        r = rng.randint(0, 3)
        total = rng.randint(2 + r, D)
        degs = _degrees_summing(total, 2 + r, rng)
        a, b, *c = (random_element(basis, x, rng, terms=2) for x in degs)
        checks.append(Check(f"identity [a,b,c..] split sum #{i}", split_bracket_check(a, b, c), f"r={r}"))
    return checks


def descent_checks(count: int, rng: random.Random, k: int = 3) -> List[Check]:
    checks = []
    for i in range(count):
        n = rng.randint(2, 5)
        a = [random_assoc(k, rng) for _ in range(n)]
        lhs = a[0]
        for x in a[1:]:
            lhs = lhs.commutator(x)
        checks.append(Check(f"descent expansion #{i}", lhs == descent_expand(a), f"n={n}"))
    return checks


def magnus_checks(count: int, rng: random.Random, k: int = 3) -> List[Check]:
    checks = []
    for i in range(count):
        m = rng.randint(1, 3)
        a = random_group_word(k, rng)
        gs = [random_group_word(k, rng) for _ in range(m)]
        checks.append(Check(f"Magnus descent congruence #{i}", magnus_descent_congruence(a, gs), f"m={m}"))
    return checks


# ------------------------------------------------------------------- suite


def _freeness_checks(label: str, rep: FreenessReport) -> List[Check]:
    out = [Check(f"{label}: relators regenerate the ideal", rep.precondition, "; ".join(rep.notes))]
    for r in rep.rows:
        out.append(Check(f"{label}: freeness [d={r.degree}]", r.ok,
                         f"actual {r.actual}, predicted {r.predicted}, "
                         f"surjective={r.surjective}, saturated={r.saturated}"))
    return out


def corrupt(relators: List[LieElement]) -> List[LieElement]:
    """Test hook: double the first nonzero relator, which no longer generates the ideal."""
    out = list(relators)
    for i, r in enumerate(out):
        if not r.is_zero():
            out[i] = r * 2
            break
    return out


def run_suite(theta: PartialCommutation, D: int, seed: int = 0, samples: int = 100,
              corrupt_relators: bool = False,
              progress: Optional[Callable[[str], None]] = None) -> SuiteResult:
    """Every check family for one graph.  ``samples`` sizes the random identity sections."""
    rng = random.Random(seed)
    say = progress or (lambda _m: None)
    sections: List[Section] = []
    tamper = corrupt if corrupt_relators else (lambda rs: rs)

    say("identities")
    sec = Section("identities")
    sec.checks += jacobi_checks(samples, rng)
    sec.checks += split_bracket_checks(samples, rng)
    sec.checks += descent_checks(samples, rng)
    sec.checks += magnus_checks(max(20, samples // 5), rng)
    sections.append(sec)

    p = FPPresentation(theta) if theta.n >= 2 else None
    if not theta.is_empty and D >= 2:
        say("elimination")
        rep = eliminate(theta, D)
        sections.append(Section("elimination", rep.checks))
        say("raag freeness")
        I = raag_ideal(rep.theta, D)
        b = I.ambient
        fr = check_freeness(b, I, tamper(raag_relators(b, rep.theta)), D)
        sections.append(Section("raag freeness", _freeness_checks("raag ideal", fr)))

    if p is not None and D >= 2:
        say("fp ideal")
        basis, J = fp_ideal(p, D)
        sec = Section("fp ideal")
        for d in range(1, D + 1):
            sec.checks.append(Check(f"J^{d} saturated", is_saturated(J.lattice(d))))
        for d, ok in corollary_split(p, D, J=J, basis=basis).items():
            sec.checks.append(Check(f"gr_{d} splits as raag + Omega quotient", ok))
        sections.append(sec)
        say("decomposition")
        if theta.is_empty:
            sections.append(Section("decomposition (empty relation)", theta_empty_case(p.n, D).checks))
            R3 = [r.lie for r in fp_relators(p, basis).R3]
            fr = check_freeness(basis, ideal_generate(basis, R3, D), tamper(R3), D)
            sections.append(Section("fp freeness", _freeness_checks("J from R3", fr)))
        else:
            sections.append(Section("decomposition", decompose_J(p, D, J=J, basis=basis).checks))
            om = OmegaAlgebra(p, D)
            fr = check_freeness(om.basis, om.ideal(), tamper(om.relators()), D)
            sections.append(Section("omega freeness", _freeness_checks("I_Omega", fr)))
        say("magnus relators")
        sections.append(Section("magnus relators", relator_provenance(p, max(D, 4))))
    return SuiteResult(sections)
