"""Acceptance criteria.  Each test prints one PASS/FAIL line with its timing."""

import itertools
import math
import random
import sys
import time
from contextlib import contextmanager
from fractions import Fraction

from gca.alphabet import AbelianGroup, SymbolicAlphabet, cyclic
from gca.automaton import (
    PeriodicConfig,
    apply_patch,
    apply_periodic,
    compose,
    find_inverse,
    identity_ca,
    linear_ca,
    table_ca,
)
from gca.corpus import generate, parse_corpus, random_matrix
from gca.deciders import FALSE, TRUE, check_all, certify_post_surjective, decide_surjective
from gca.groups import Lattice
from gca.lattice import bareiss_rank, is_unimodular, matmul, smith_normal_form
from gca.meandim import mdim_estimate, window_dim
from gca.scenario import load_scenario, registry, run_scenario
from gca.sofic import SoficWitness, check_packing, compute_Vr, counting_audit, greedy_tiling, packing_subset, torus_graph

Z, Z2 = Lattice(1), Lattice(2)
PROPS = ["preinjective", "surjective", "post_surjective", "star", "starstar"]


@contextmanager
def criterion(n, title, budget):
    t0 = time.perf_counter()
    try:
        yield
    except BaseException:
        sys.__stdout__.write(f"\nACCEPTANCE {n:>2} FAIL  {time.perf_counter() - t0:8.3f}s  {title}\n")
        raise
    dt = time.perf_counter() - t0
    ok = dt < budget
    sys.__stdout__.write(f"\nACCEPTANCE {n:>2} {'PASS' if ok else 'FAIL'}  {dt:8.3f}s  {title} (budget {budget}s)\n")
    assert ok, f"criterion {n} took {dt:.3f}s, budget {budget}s"


def corpus_verdicts():
    spec = parse_corpus(registry()["corpus"])
    assert spec.size == 200 and spec.alphabets == [[2], [3], [4], [2, 2]] and spec.memory_pool == [-1, 0, 1]
    out = []
    for ca in generate(spec):
        out.append((ca, {v.name: v.status for v in check_all(ca, PROPS, spec.radius_max)}))
    return out


def test_01_doubling_weak_preinjectivity():
    with criterion(1, "Z/4 doubling: (••) true, (•) false with H = X minus {e}, not surjective", 1.0):
        sc = load_scenario("examples/prop44.scn")
        rep = run_scenario(sc)
        checks = {c["name"]: c for c in rep["checks"]}
        assert checks["starstar"]["status"] == TRUE
        star = checks["star"]
        assert star["status"] == FALSE
        assert len(star["witness"]["omega"]) == 1 and star["witness"]["H"] == "A^omega minus {e}"
        # the kernel pattern k != e has tau(k) = tau(e) on the affected sites
        k = {int(g): a for g, a in star["witness"]["kernel_pattern"].items()}
        assert any(k.values()) and not any(apply_patch(sc.ca, k, list(k)).values())
        surj = checks["surjective"]
        assert surj["status"] == FALSE
        orphan = tuple(surj["witness"]["orphan"][str(i)] for i in range(len(surj["witness"]["orphan"])))
        images = {tuple(sc.ca.local([x[i]]) for i in range(len(orphan)))
                  for x in itertools.product(range(4), repeat=len(orphan))}
        assert orphan not in images


def test_02_elliptic_doubling():
    with criterion(2, "elliptic doubling: post-surjective at index 0, kernel of order 4", 1.0):
        sc = load_scenario("ex62")
        assert isinstance(sc.ca.alphabet, SymbolicAlphabet) and sc.ca.alphabet.torsion.kind == "elliptic"
        post = certify_post_surjective(sc.ca)
        assert post.status == TRUE and post.bound == 0 and post.witness["correction_set"] == [0]
        rep = {c["name"]: c for c in run_scenario(sc)["checks"]}
        pre = rep["preinjective"]
        assert pre["status"] == FALSE
        assert pre["witness"]["kernel_dim"] == 0 and pre["witness"]["kernel_components"] == 4


def test_03_dual_surjunctivity_sweep():
    with criterion(3, "200 random CA: none post-surjective and not (•)-pre-injective", 300.0):
        bad = [ca for ca, s in corpus_verdicts() if s["post_surjective"] == TRUE and s["star"] == FALSE]
        assert bad == []


def test_04_garden_of_eden_sweep():
    with criterion(4, "200 random CA: pre-injective iff surjective, both decided", 300.0):
        for ca, s in corpus_verdicts():
            assert s["preinjective"] in (TRUE, FALSE) and s["surjective"] in (TRUE, FALSE)
            assert s["preinjective"] == s["surjective"], ca


def test_05_post_surjective_implies_surjective():
    with criterion(5, "post-surjective implies surjective; XOR surjective, not post-surjective", 60.0):
        assert not [ca for ca, s in corpus_verdicts() if s["post_surjective"] == TRUE and s["surjective"] == FALSE]
        xor = linear_ca(Z, cyclic(2), [0, 1], [[1, 1]])
        assert decide_surjective(xor).status == TRUE
        post = certify_post_surjective(xor)
        assert post.status == FALSE and post.witness == {"deviation": 1}


def test_06_star_implies_starstar():
    with criterion(6, "no CA (•)-pre-injective and not (••)-pre-injective", 60.0):
        assert not [ca for ca, s in corpus_verdicts() if s["star"] == TRUE and s["starstar"] == FALSE]


def test_07_sofic_machinery():
    with criterion(7, "tori: V(3r) = V, packing exact, identity audit chains hold", 60.0):
        cases = [(Z, r, n) for r in (1, 2) for n in range(6 * r + 1, 6 * r + 4)] + [(Z2, 1, 7), (Z2, 1, 8)]
        for u, r, n in cases:
            g, _ = torus_graph(u, n)
            V3 = compute_Vr(g, u, 3 * r)
            assert len(V3) == g.n_vertices
            Vp = packing_subset(g, V3, r)
            assert check_packing(g, V3, Vp, r) == (True, True)
            for A in (cyclic(2), SymbolicAlphabet("torus", 1, AbelianGroup([2]))):
                eps = Fraction(1, 1000)
                rep = counting_audit(identity_ca(u, A), SoficWitness(g, u, 3 * r, eps), r)
                chain = [ln for ln in rep.lines if ln.kind in ("derived", "premise")]
                assert chain and all(ln.holds for ln in chain), [ln.label for ln in chain if not ln.holds]


def test_08_tilings():
    with criterion(8, "greedy tiling of [0,9]^2 by {0,1}^2 is the even sublattice", 1.0):
        region = [(x, y) for x in range(10) for y in range(10)]
        t = greedy_tiling(Z2, [(0, 0), (0, 1), (1, 0), (1, 1)], region)
        assert set(t.centers) == {(x, y) for x in range(0, 10, 2) for y in range(0, 10, 2)}
        assert t.tiles_disjoint()
        assert t.interior and t.covers(t.interior)


def test_09_mean_dimension():
    with criterion(9, "full shift calibration, doubling entropy log 2, torus doubling mdim 1", 30.0):
        for A, d in ((SymbolicAlphabet("torus", 1), 1), (SymbolicAlphabet("torus", 2, AbelianGroup([3])), 2)):
            est = mdim_estimate(identity_ca(Z, A), 5)
            assert est.ratios == [Fraction(d)] * 5
        for A in (cyclic(4), AbelianGroup([2, 2]), cyclic(3)):
            for n in range(1, 13):
                assert window_dim(identity_ca(Z, A), range(n)).entropy_is_log(A.order)
        dbl = linear_ca(Z, cyclic(4), [0], [[2]])
        for n in range(1, 13):
            w = window_dim(dbl, range(n))
            assert w.entropy_is_log(2) and Fraction(int(math.log2(w.count)), n) == 1
        tor = linear_ca(Z, SymbolicAlphabet("torus", 1), [0], [[2]])
        for n in range(1, 21):
            assert Fraction(window_dim(tor, range(n)).dim, n) == 1


def test_10_smith_normal_form():
    with criterion(10, "1000 random matrices: SNF diagonal, divisor chain, rank matches Bareiss", 30.0):
        rng = random.Random(10)
        for _ in range(1000):
            r, c = rng.randint(1, 6), rng.randint(1, 6)
            B = [[rng.randint(-10, 10) for _ in range(c)] for _ in range(r)]
            d = smith_normal_form(B)
            assert matmul(matmul(d.U, B), d.V) == d.diagonal()
            assert is_unimodular(d.U) and is_unimodular(d.V)
            assert all(x > 0 for x in d.divisors)
            assert all(b % a == 0 for a, b in zip(d.divisors, d.divisors[1:]))
            assert d.rank == bareiss_rank(B)


def _local_composite(s, t):
    """The local rule of ``s o t`` assembled from the two local rules."""
    u = s.universe
    memory = u.sorted({u.mul(a, b) for a in s.memory for b in t.memory})
    table = {}
    for vals in itertools.product(s.alphabet.elements, repeat=len(memory)):
        c = dict(zip(memory, vals))
        table[vals] = s.local([t.local([c[u.mul(a, b)] for b in t.memory]) for a in s.memory])
    return table_ca(u, s.alphabet, memory, table)


def test_11_functoriality():
    with criterion(11, "100 random pairs: (s o t) local rule equals s0 o t0", 30.0):
        rng = random.Random(11)
        for i in range(100):
            u, pool = (Z, [-1, 0, 1]) if i % 2 == 0 else (Z2, [(0, 0), (1, 0), (0, 1)])
            A = AbelianGroup(rng.choice([[2], [3], [4], [2, 2]]))
            pair = []
            for _ in range(2):
                mem = rng.sample(pool, rng.randint(1, 2))
                pair.append(linear_ca(u, A, mem, random_matrix(rng, A, len(mem))))
            s, t = pair
            composed = compose(s, t)
            assert composed.normalized().same_as(_local_composite(s, t).normalized())
            if u == Z:
                c = PeriodicConfig.from_word([rng.choice(A.elements) for _ in range(5)])
                assert apply_periodic(composed, c).values == apply_periodic(s, apply_periodic(t, c)).values


def test_12_inverse_search():
    with criterion(12, "tripling over Z/4 inverts at radius 0; XOR has no inverse up to radius 4", 10.0):
        res = find_inverse(linear_ca(Z, cyclic(4), [0], [[3]]), 4)
        assert res.radius == 0 and res.inverse.normalized().rule.matrix == [[3]]
        xor = linear_ca(Z, cyclic(2), [0, 1], [[1, 1]])
        res = find_inverse(xor, 4)
        assert res.inverse is None and res.searched == 4
        w = res.witness
        assert any(w.values.values()) and not any(apply_periodic(xor, w).values.values())
