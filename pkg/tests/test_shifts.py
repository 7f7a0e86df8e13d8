import itertools
import math
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from gca.alphabet import cyclic
from gca.automaton import apply_patch, apply_periodic, linear_ca
from gca.corpus import random_ca
from gca.groups import Lattice
from gca.shifts import (
    SFT,
    DeBruijnGraph,
    finite_kernel_word,
    glue,
    image_automaton,
    orphan_word,
    periodic_kernel_config,
    preimage_counts,
    single_site_corrections,
    strong_irreducibility_gap,
)

Z = Lattice(1)
ALPHABETS = [[2], [3], [4], [2, 2]]
seeds = st.integers(0, 10 ** 6)


def images(ca, n):
    """All length-n image windows, by enumerating length n + span - 1 preimages."""
    lo, hi = min(ca.memory), max(ca.memory)
    w = hi - lo + 1
    out = set()
    for x in itertools.product(ca.alphabet.elements, repeat=n + w - 1):
        out.add(tuple(ca.local([x[i + m - lo] for m in ca.memory]) for i in range(n)))
    return out


def padded_image(ca, patch):
    e = ca.alphabet.identity
    lo, hi = min(ca.memory), max(ca.memory)
    a, b = min(patch), max(patch)
    full = {g: patch.get(g, e) for g in range(a - 2 * (hi - lo) - 1, b + 2 * (hi - lo) + 2)}
    return apply_patch(ca, full, range(a - hi - 1, b - lo + 2))


def xor():
    return linear_ca(Z, cyclic(2), [0, 1], [[1, 1]])


def doubling():
    return linear_ca(Z, cyclic(4), [0], [[2]])


@given(seeds)
def test_window_counts_match_enumeration(seed):
    rng = random.Random(seed)
    ca = random_ca(rng, rng.choice(ALPHABETS), [-1, 0, 1])
    aut = image_automaton(ca)
    for n in range(1, 4):
        img = images(ca, n)
        assert aut.count_words(n) == len(img)
        for y in itertools.product(ca.alphabet.elements, repeat=n):
            assert aut.accepts(y) == (y in img)


@given(seeds)
def test_orphans_are_shortest(seed):
    rng = random.Random(seed)
    ca = random_ca(rng, rng.choice(ALPHABETS), [-1, 0, 1])
    w = orphan_word(ca)
    if w is None:
        assert all(len(images(ca, n)) == ca.alphabet.order ** n for n in range(1, 4))
    else:
        assert w not in images(ca, len(w))
        if len(w) > 1:
            assert len(images(ca, len(w) - 1)) == ca.alphabet.order ** (len(w) - 1)


def test_frozen_orphans_and_counts():
    assert orphan_word(doubling()) == (1,)
    assert image_automaton(xor()).is_universal()
    assert [image_automaton(doubling()).count_words(n) for n in range(1, 6)] == [2, 4, 8, 16, 32]
    assert set(preimage_counts(xor(), 4).values()) == {2}


def test_de_bruijn_graph():
    G = DeBruijnGraph.of(xor())
    assert G.width == 2 and G.zero == (0,)
    assert sorted(G.edges_from((1,))) == [(0, (0,), 1), (1, (1,), 0)]


@given(seeds)
def test_finite_kernel_words(seed):
    rng = random.Random(seed)
    ca = random_ca(rng, rng.choice(ALPHABETS), [-1, 0, 1])
    c = finite_kernel_word(ca)
    e = ca.alphabet.identity
    if c is not None:
        assert any(v != e for v in c.values())
        assert all(v == e for v in padded_image(ca, c).values())
    else:
        # no nonzero kernel word with support inside a window of length 4
        for w in itertools.product(ca.alphabet.elements, repeat=4):
            if any(a != e for a in w):
                assert any(v != e for v in padded_image(ca, dict(enumerate(w))).values())


@given(seeds)
def test_periodic_kernel_configs(seed):
    rng = random.Random(seed)
    ca = random_ca(rng, rng.choice(ALPHABETS), [-1, 0, 1])
    c = periodic_kernel_config(ca)
    e = ca.alphabet.identity
    if c is not None:
        assert any(v != e for v in c.values.values())
        assert all(v == e for v in apply_periodic(ca, c).values.values())


def test_xor_periodic_kernel():
    c = periodic_kernel_config(xor())
    assert c.values == {0: 1}
    assert finite_kernel_word(xor()) is None
    assert finite_kernel_word(doubling()) == {0: 2}


@given(seeds)
def test_single_site_corrections(seed):
    rng = random.Random(seed)
    ca = random_ca(rng, rng.choice(ALPHABETS), [-1, 0, 1])
    e = ca.alphabet.identity
    for a, patch in single_site_corrections(ca).items():
        if patch:
            img = padded_image(ca, patch)
            assert img[0] == a
            assert all(v == e for g, v in img.items() if g != 0)


def test_xor_corrections_missing():
    assert single_site_corrections(xor())[1] is None
    assert single_site_corrections(linear_ca(Z, cyclic(3), [1], [[1]]))[2] == {1: 2}


# -- subshifts of finite type -----------------------------------------------


def admissible(sft, w):
    """``w`` extends by ``2^D + 1`` letters on both sides (so, by pigeonhole, forever)."""
    D = sft.D
    ok = lambda u: all(tuple(u[i:i + D]) in sft.allowed for i in range(len(u) - D + 1))  # noqa: E731
    if not ok(w):
        return False
    ext = len(sft.alphabet) ** D + 1
    words = list(itertools.product(sft.alphabet, repeat=ext))
    return any(ok(list(p) + list(w)) for p in words) and any(ok(list(w) + list(s)) for s in words)


def brute_gap(sft, k_max):
    L = max(1, sft.D - 1)
    blocks = [w for w in itertools.product(sft.alphabet, repeat=L) if admissible(sft, w)]
    if not blocks:
        return math.inf

    def glues(k):
        for x in blocks:
            for y in blocks:
                if not any(admissible(sft, x + m + y) for m in itertools.product(sft.alphabet, repeat=k)):
                    return False
        return True

    good = [glues(k) for k in range(k_max + 1)]
    if not good[-1]:
        return math.inf
    k = k_max
    while k > 0 and good[k - 1]:
        k -= 1
    return k


def test_frozen_gaps():
    golden = SFT.from_strings("01", ["00", "01", "10"])
    assert strong_irreducibility_gap(golden).delta == 1
    assert glue(golden, "1", "1", 1) == tuple("101")
    full = SFT.full("01")
    assert strong_irreducibility_gap(full).delta == 0
    assert glue(full, "01", "10", 0) == tuple("0110")
    reducible = SFT.from_strings("01", ["00", "11"])
    assert strong_irreducibility_gap(reducible).delta == math.inf
    with pytest.raises(ValueError):
        glue(golden, "1", "1", 0)


@pytest.mark.parametrize("D", [2, 3])
def test_gap_matches_brute_force(D):
    rng = random.Random(D)
    windows = list(itertools.product("01", repeat=D))
    for _ in range(25 if D == 2 else 12):
        allowed = [w for w in windows if rng.random() < 0.7]
        if not allowed:
            continue
        sft = SFT(tuple("01"), D, frozenset(allowed))
        delta = strong_irreducibility_gap(sft).delta
        k_max = 6 if D == 2 else 7
        assert delta == brute_gap(sft, k_max), sorted(allowed)
        if delta != math.inf:
            blocks = [w for w in itertools.product("01", repeat=D - 1) if admissible(sft, w)]
            for x in blocks:
                for y in blocks:
                    g = glue(sft, x, y, delta + 1)
                    assert admissible(sft, list(g)) and g[:len(x)] == x and g[len(g) - len(y):] == y
