import random

import pytest
from hypothesis import given, settings, strategies as st

from lie_elim.core_lie import (
    Alphabet,
    Generator,
    HallBasis,
    LieHom,
    LieMonomial,
    free_subalgebra,
    graded_rank,
    left_normed,
    rewrite_bracket,
    weighted_witt,
    witt_necklace,
)
from lie_elim.zmodule import Lattice
from lie_elim.errors import DegreeOverflowError, InvalidArgument
from lie_elim.tensor_oracle import AssocPoly, embed, lie_lattice
from lie_elim.verify import random_element

B3 = HallBasis(Alphabet.standard(3), 6)


@pytest.fixture
def xy():
    b = HallBasis(Alphabet.from_names(["x", "y"]), 5)
    return b, *b.gens()


def test_two_generators_degree_two(xy):
    b, x, y = xy
    assert [m.render() for m in b.per_degree[1]] == ["x", "y"]
    assert [m.render() for m in b.per_degree[2]] == ["[y,x]"]


def test_single_generator_collapses():
    b = HallBasis(Alphabet.from_names(["x"]), 4)
    assert [b.rank(d) for d in range(1, 5)] == [1, 0, 0, 0]


def test_weighted_counts():
    a = Alphabet([Generator(0, "a", 1), Generator(1, "b", 2)])
    b = HallBasis(a, 3)
    assert [b.rank(d) for d in (1, 2, 3)] == [1, 1, 1]
    assert b.per_degree[3][0].render() == "[b,a]"


def test_zero_cutoff_rejected():
    with pytest.raises(InvalidArgument):
        HallBasis(Alphabet.standard(2), 0)


def test_bracket_examples(xy):
    b, x, y = xy
    assert rewrite_bracket(x, x).is_zero()
    yx = rewrite_bracket(y, x)
    assert rewrite_bracket(x, y) == -yx
    assert len(yx.terms) == 1 and next(iter(yx.terms.values())) == 1
    assert left_normed([x]) == x
    assert left_normed([y, x, x]) == rewrite_bracket(rewrite_bracket(y, x), x)


def test_overflow_is_an_error(xy):
    b, x, y = xy
    with pytest.raises(DegreeOverflowError):
        rewrite_bracket(b.basis_element(3, 0), b.basis_element(3, 1))


def test_empty_left_normed_rejected():
    with pytest.raises(InvalidArgument):
        left_normed([])


def test_graded_rank_examples(xy):
    b, *_ = xy
    assert [graded_rank(b, d) for d in range(1, 6)] == [2, 1, 2, 3, 6]
    assert graded_rank(HallBasis(Alphabet.standard(3), 2), 2) == 3
    assert graded_rank(HallBasis(Alphabet.standard(1), 2), 2) == 0
    with pytest.raises(InvalidArgument):
        graded_rank(b, 6)


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_counts_match_necklace(k):
    b = HallBasis(Alphabet.standard(k), 6)
    assert [b.rank(d) for d in range(1, 7)] == [witt_necklace(k, d) for d in range(1, 7)]
    assert weighted_witt((1,) * k, 6)[1:] == [witt_necklace(k, d) for d in range(1, 7)]


def test_weighted_witt_generating_function():
    # prod (1 - t^d)^(-r_d) == 1 / (1 - sum t^deg) to the cutoff
    from lie_elim.tensor_oracle import pbw_dim

    for degrees in [(1, 2), (1, 2, 2, 2), (1, 1, 3)]:
        r = weighted_witt(degrees, 8)[1:]
        series = [1] + [0] * 8
        for d in range(1, 9):
            series[d] = sum(series[d - g] for g in degrees if g <= d)
        assert [pbw_dim(r, d) for d in range(9)] == series


@pytest.mark.parametrize("d", range(1, 6))
def test_embedded_basis_is_independent(d):
    lat, _ = lie_lattice(B3, d)
    assert lat.rank == B3.rank(d)


def _elem(seed, d):
    return random_element(B3, d, random.Random(seed))


@given(st.integers(0, 10**6), st.integers(1, 3), st.integers(1, 3))
def test_antisymmetry_and_oracle(seed, da, db):
    a, b = _elem(seed, da), _elem(seed + 1, db)
    ab = rewrite_bracket(a, b)
    assert (ab + rewrite_bracket(b, a)).is_zero()
    assert embed(ab) == embed(a).commutator(embed(b))


@given(st.integers(0, 10**6), st.integers(1, 2), st.integers(1, 2), st.integers(1, 2))
def test_jacobi(seed, da, db, dc):
    a, b, c = _elem(seed, da), _elem(seed + 1, db), _elem(seed + 2, dc)
    total = left_normed([a, b, c]) + left_normed([b, c, a]) + left_normed([c, a, b])
    assert total.is_zero()


@given(st.integers(0, 10**6))
def test_bilinearity(seed):
    a, b, c = _elem(seed, 2), _elem(seed + 1, 2), _elem(seed + 2, 3)
    assert rewrite_bracket(a + b, c) == rewrite_bracket(a, c) + rewrite_bracket(b, c)
    assert rewrite_bracket(a * 3, c) == rewrite_bracket(a, c) * 3


def test_evaluate_tree_matches_rewrite():
    x, y, z = B3.gens()
    t = LieMonomial.node(LieMonomial.leaf(B3.alphabet[0]),
                         LieMonomial.node(LieMonomial.leaf(B3.alphabet[2]), LieMonomial.leaf(B3.alphabet[1])))
    assert B3.evaluate(t) == rewrite_bracket(x, rewrite_bracket(z, y))


def test_render_flattens_left_normed_only():
    s = Alphabet.from_names(["y1", "y2", "s"])
    y1, y2, sl = (LieMonomial.leaf(g) for g in s)
    assert LieMonomial.left_normed([y2, y1, y1]).render() == "[y2,y1,y1]"
    assert LieMonomial.node(LieMonomial.node(sl, y2), LieMonomial.node(sl, y1)).render() == "[[s,y2],[s,y1]]"


def test_lie_hom_is_a_homomorphism():
    src = HallBasis(Alphabet.standard(2), 3)
    x, y = src.gens()
    a, b, c = B3.gens()
    f = LieHom(src, B3, [rewrite_bracket(b, a), c])
    assert f(rewrite_bracket(y, x)) == rewrite_bracket(c, rewrite_bracket(b, a))
    assert f(left_normed([y, x, x])) == left_normed([c, rewrite_bracket(b, a), rewrite_bracket(b, a)])


def test_free_subalgebra_on_independent_elements():
    x, y, z = B3.gens()
    sub = free_subalgebra(B3, [z, rewrite_bracket(z, x)], max_degree=5)
    # generators of degree 1 and 2 span a free algebra with weighted Witt counts
    w = weighted_witt((1, 2), 5)
    for d in range(1, 6):
        assert sub.rank_bound(d) == w[d]
        assert Lattice.span(B3.rank(d), sub.vectors(d)).rank == w[d]


def test_lie_element_equality_and_zero(xy):
    b, x, y = xy
    assert (x - x).is_zero()
    assert x + y == y + x
    assert not (x == y)
    assert (x * 0).is_zero()
