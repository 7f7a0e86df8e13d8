import itertools
import random

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from gca.alphabet import (
    AbelianGroup,
    MatrixHom,
    NotAHomomorphism,
    SymbolicAlphabet,
    TableGroup,
    cyclic,
    hom_check,
    image_and_kernel,
    pi0,
    pi0_hom,
    rule_from_matrix,
    table_hom,
)
from gca.corpus import random_matrix

factor_lists = st.lists(st.sampled_from([2, 3, 4, 6]), min_size=1, max_size=2)


def brute(h, A, m):
    """Image and kernel of a hom A^m -> A^k by enumerating the domain."""
    image, kernel = set(), 0
    zero = h(tuple(A.identity for _ in range(m)))
    for x in itertools.product(A.elements, repeat=m):
        y = h(x)
        image.add(y)
        kernel += y == zero
    return len(image), kernel


@given(factor_lists, st.integers(1, 3), st.integers(0, 10 ** 6))
def test_matrix_hom_orders_match_enumeration(factors, m, seed):
    A = AbelianGroup(factors)
    assume(A.order ** m <= 2000)
    M = random_matrix(random.Random(seed), A, m)
    h = rule_from_matrix(A, m, M)
    assert isinstance(h, MatrixHom)
    img, ker = brute(h, A, m)
    assert h.image_order() == img == len(h.image())
    assert h.kernel_order() == ker
    assert img * ker == A.order ** m
    assert h.is_injective() == (ker == 1)
    for g in h.kernel_generators():
        assert h(g) == h(tuple(A.identity for _ in range(m)))


@given(factor_lists, st.integers(1, 2), st.integers(0, 10 ** 6))
def test_matrix_hom_is_a_hom(factors, m, seed):
    A = AbelianGroup(factors)
    assume(A.order ** m <= 200)
    h = rule_from_matrix(A, m, random_matrix(random.Random(seed), A, m))
    assert hom_check(lambda x: h(x)[0], A, m)


def test_cyclic_group_operations():
    C = cyclic(4)
    assert C.elements == (0, 1, 2, 3)
    assert C.mul(3, 2) == 1 and C.inv(1) == 3
    A = AbelianGroup([2, 2])
    assert A.order == 4 and A.rank == 2
    assert A.elements[:2] == ((0, 0), (0, 1))


def test_doubling_hom():
    h = rule_from_matrix(cyclic(4), 1, [[2]])
    assert h((1,)) == (2,)
    assert (h.image_order(), h.kernel_order()) == (2, 2)
    assert h.kernel_generators() == [(2,)]
    inv = image_and_kernel(h)
    assert inv.image_components == 2 and inv.kernel_components == 2 and not inv.surjective


def test_invalid_matrix_rejected():
    with pytest.raises((NotAHomomorphism, ValueError)):
        rule_from_matrix(AbelianGroup([2, 4]), 1, [[0, 0], [1, 0]])


def test_hom_check():
    C = cyclic(4)
    assert hom_check({(a,): (2 * a) % 4 for a in range(4)}, C, 1)
    assert not hom_check({(a,): (a * a) % 4 for a in range(4)}, C, 1)


def test_table_group_and_table_hom():
    T = TableGroup([[0, 1, 2], [1, 2, 0], [2, 0, 1]])
    assert T.order == 3 and T.is_abelian
    h = table_hom(T, 1, {(a,): T.mul(a, a) for a in range(3)})
    assert h.image_order() == 3 and h.kernel_order() == 1


def test_nonabelian_table_group():
    # S3 as permutations of (0, 1, 2)
    perms = list(itertools.permutations(range(3)))
    table = [[perms.index(tuple(p[q[i]] for i in range(3))) for q in perms] for p in perms]
    S3 = TableGroup(table)
    assert S3.order == 6 and not S3.is_abelian
    assert hom_check(lambda x: x[0], S3, 1)
    assert not hom_check(lambda x: S3.mul(x[0], x[0]), S3, 1)


def test_symbolic_alphabets():
    E = SymbolicAlphabet("elliptic", 1)
    assert E.dim == 1 and pi0(E).order == 1
    assert E.torsion(2) == 4
    T = SymbolicAlphabet("torus", 2, AbelianGroup([3]))
    assert T.dim == 2 and pi0(T).order == 3
    h = rule_from_matrix(E, 1, [[2]])
    assert h.rank() == 1 and h.kernel_invariants() == (0, 4)
    assert rule_from_matrix(SymbolicAlphabet("torus", 1), 1, [[2]]).kernel_invariants() == (0, 2)
    assert rule_from_matrix(SymbolicAlphabet("vector", 1), 1, [[2]]).kernel_invariants() == (0, 1)


def test_pi0_hom_of_symbolic():
    T = SymbolicAlphabet("torus", 1, AbelianGroup([2]))
    h = rule_from_matrix(T, 1, [[1]], [[0]])
    p = pi0_hom(h)
    assert p.image_order() == 1 and p.kernel_order() == 2
