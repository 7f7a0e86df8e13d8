import itertools
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from gca.alphabet import AbelianGroup
from gca.groups import (
    FiniteUniverse,
    FreeGroup,
    Lattice,
    NotAmenable,
    UniverseMismatch,
    ball,
    cayley_ball_graph,
    folner_box,
    folner_ratio,
    word_lengths,
)


def l1_ball_count(d, r):
    return sum(1 for p in itertools.product(range(-r, r + 1), repeat=d) if sum(map(abs, p)) <= r)


@pytest.mark.parametrize("d", [1, 2, 3])
@pytest.mark.parametrize("r", [0, 1, 2, 3])
def test_lattice_ball_sizes(d, r):
    assert len(ball(Lattice(d), r)) == l1_ball_count(d, r)


@pytest.mark.parametrize("r", range(5))
def test_free_group_ball_sizes(r):
    # reduced words of length <= r over 2 generators and their inverses
    assert len(ball(FreeGroup(2), r)) == 1 + 2 * (3 ** r - 1)


def test_ball_is_sorted_and_indexed():
    B = ball(Lattice(1), 2)
    assert B.elements == (-2, -1, 0, 1, 2)
    assert 2 in B and 3 not in B


def test_finite_universe_ball_saturates():
    U = FiniteUniverse(AbelianGroup([5]))
    assert len(ball(U, 1)) == 5
    U = FiniteUniverse(AbelianGroup([6]), (1, 5))
    assert [len(ball(U, r)) for r in range(5)] == [1, 3, 5, 6, 6]


def test_free_group_words():
    F = FreeGroup(2)
    assert F.mul((1,), (-1,)) == ()
    assert F.element("ab") == (1, 2)
    assert F.format((1, -2)) == "aB"
    assert not F.amenable
    with pytest.raises(NotAmenable):
        folner_box(F, 1)


@given(st.lists(st.integers(-2, 2).filter(bool), max_size=6),
       st.lists(st.integers(-2, 2).filter(bool), max_size=6),
       st.lists(st.integers(-2, 2).filter(bool), max_size=6))
def test_free_group_axioms(a, b, c):
    F = FreeGroup(2)
    a, b, c = F.element(a), F.element(b), F.element(c)
    assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
    assert F.mul(a, F.inv(a)) == F.identity()


@given(st.tuples(st.integers(-9, 9), st.integers(-9, 9)), st.tuples(st.integers(-9, 9), st.integers(-9, 9)))
def test_lattice_axioms(a, b):
    Z2 = Lattice(2)
    assert Z2.mul(a, b) == Z2.mul(b, a) == (a[0] + b[0], a[1] + b[1])
    assert Z2.mul(a, Z2.inv(a)) == Z2.identity()


def test_mismatched_element_rejected():
    with pytest.raises(UniverseMismatch):
        Lattice(2).check(3)


@pytest.mark.parametrize("d", [1, 2])
@pytest.mark.parametrize("i", range(5))
def test_folner_ratio_of_boxes(d, i):
    u = Lattice(d)
    F = folner_box(u, i).elements
    assert len(F) == 2 ** (i * d)
    for s in u.generators:
        assert folner_ratio(u, F, s) == Fraction(1, 2 ** i)


def test_word_lengths_and_cayley_graph():
    wl = word_lengths(Lattice(2), 2)
    assert wl[(1, 1)] == 2 and wl[(0, 0)] == 0
    g = cayley_ball_graph(Lattice(1), 2)
    assert g.n_vertices == 5 and g.deterministic
    # interior vertices see both generators, the two ends only one
    assert len(g.edges) == 8
