"""Finite labeled graphs approximating a group, packings, the pulled-back map
``Phi`` and an audit of the counting argument for post-surjective automata.

Graph balls follow walk semantics: ``B(v, r)`` has the vertices reachable by
at most ``r`` labeled steps and the edges used by such walks, that is the
edges leaving vertices at distance ``< r``.  With this reading a cycle of
length ``2r + 1`` already looks like the integer ball of radius ``r``.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import mpmath

from .alphabet import SymbolicHom, TooLarge, dimension, pi0, pi0_hom
from .groups import GroupUniverse, Lattice, ball, word_lengths


class NondeterministicGraph(ValueError):
    pass


class GraphFormatError(ValueError):
    pass


@dataclass(frozen=True)
class LabeledGraph:
    """Vertices ``0 .. n-1``, labels ``0 .. k-1``, edges ``(v, s, w)``."""

    n_vertices: int
    n_labels: int
    edges: tuple

    def __post_init__(self):
        edges = tuple(sorted({(int(v), int(s), int(w)) for v, s, w in self.edges}))
        for v, s, w in edges:
            if not (0 <= v < self.n_vertices and 0 <= w < self.n_vertices and 0 <= s < self.n_labels):
                raise GraphFormatError(f"edge {(v, s, w)} out of range")
        object.__setattr__(self, "edges", edges)

    @property
    def deterministic(self) -> bool:
        seen = set()
        for v, s, _ in self.edges:
            if (v, s) in seen:
                return False
            seen.add((v, s))
        return True

    def successor(self) -> dict:
        if not self.deterministic:
            raise NondeterministicGraph("some vertex has two out-edges with the same label")
        return {(v, s): w for v, s, w in self.edges}

    def distances(self, v: int, r: int) -> dict:
        """Graph distance from ``v`` along out-edges, up to ``r``."""
        out: dict = {}
        for a, s, b in self.edges:
            out.setdefault(a, []).append(b)
        dist = {v: 0}
        queue = deque([v])
        while queue:
            a = queue.popleft()
            if dist[a] == r:
                continue
            for b in out.get(a, ()):
                if b not in dist:
                    dist[b] = dist[a] + 1
                    queue.append(b)
        return dist

    def ball(self, v: int, r: int) -> set:
        return set(self.distances(v, r))

    # -- text format ----------------------------------------------------

    @classmethod
    def parse(cls, text: str) -> "LabeledGraph":
        lines = [ln.strip() for ln in text.splitlines()]
        lines = [ln for ln in lines if ln and not ln.startswith("#")]
        if not lines:
            raise GraphFormatError("empty graph file")
        head = lines[0].split()
        if len(head) != 3 or head[0] != "graph":
            raise GraphFormatError("header must read 'graph |V| |S|'")
        try:
            n, k = int(head[1]), int(head[2])
            edges = []
            for ln in lines[1:]:
                parts = ln.split()
                if len(parts) != 3:
                    raise GraphFormatError(f"bad edge line {ln!r}")
                edges.append(tuple(int(p) for p in parts))
        except ValueError as exc:
            if isinstance(exc, GraphFormatError):
                raise
            raise GraphFormatError(str(exc)) from None
        return cls(n, k, tuple(edges))

    @classmethod
    def read(cls, path) -> "LabeledGraph":
        with open(path, encoding="utf-8") as fh:
            return cls.parse(fh.read())

    def format(self) -> str:
        rows = [f"graph {self.n_vertices} {self.n_labels}"]
        rows += [f"{v} {s} {w}" for v, s, w in self.edges]
        return "\n".join(rows) + "\n"


def torus_graph(u: Lattice, n: int) -> tuple[LabeledGraph, list]:
    """The Cayley graph of ``(Z/n)^d`` for the generators of ``u``.

    Returns the graph and the list of vertex coordinates.
    """
    import itertools

    if n < 1:
        raise ValueError("torus side must be positive")
    coords = list(itertools.product(range(n), repeat=u.dim))
    index = {c: i for i, c in enumerate(coords)}
    edges = []
    for i, c in enumerate(coords):
        for s_idx, s in enumerate(u.generators):
            step = u.vec(s)
            w = tuple((a + b) % n for a, b in zip(c, step))
            edges.append((i, s_idx, index[w]))
    return LabeledGraph(len(coords), len(u.generators), tuple(edges)), coords


# ---------------------------------------------------------------------------
# V(r)


def _walk_tree(u: GroupUniverse, r: int) -> list:
    """``(g, parent, label)`` in BFS order over ``ball(u, r)``."""
    one = u.identity()
    order = [(one, None, None)]
    seen = {one}
    frontier = [one]
    for _ in range(r):
        nxt = []
        for g in frontier:
            for s_idx, s in enumerate(u.generators):
                h = u._mul(g, s)
                if h not in seen:
                    seen.add(h)
                    order.append((h, g, s_idx))
                    nxt.append(h)
        frontier = nxt
    return order


def ball_isomorphism(graph: LabeledGraph, u: GroupUniverse, v: int, r: int, _cache=None) -> dict | None:
    """The labeled isomorphism ``ball(u, r) -> B(v, r)`` sending ``1`` to ``v``, if any."""
    if graph.n_labels != len(u.generators):
        raise ValueError("graph labels do not match the generators")
    succ = graph.successor()
    tree, lengths = _cache or (_walk_tree(u, r), word_lengths(u, r))
    psi = {}
    for g, parent, s in tree:
        if parent is None:
            psi[g] = v
            continue
        w = succ.get((psi[parent], s))
        if w is None:
            return None
        psi[g] = w
    if len(set(psi.values())) != len(psi) or set(psi.values()) != graph.ball(v, r):
        return None
    # every edge leaving a vertex at distance < r must match
    for g, d in lengths.items():
        if d >= r:
            continue
        for s_idx, s in enumerate(u.generators):
            if succ.get((psi[g], s_idx)) != psi[u._mul(g, s)]:
                return None
    return psi


@dataclass
class SoficWitness:
    graph: LabeledGraph
    universe: GroupUniverse
    radius: int
    epsilon: Fraction
    V: dict = field(default_factory=dict)  # radius -> {vertex: psi}

    def Vr(self, r: int) -> dict:
        if r not in self.V:
            self.V[r] = compute_Vr(self.graph, self.universe, r)
        return self.V[r]

    @property
    def satisfies_bound(self) -> bool:
        """``|V(r)| >= (1 - eps)|V|`` for the recorded radius."""
        return len(self.Vr(self.radius)) >= (1 - self.epsilon) * self.graph.n_vertices


def compute_Vr(graph: LabeledGraph, u: GroupUniverse, r: int) -> dict:
    """Vertices whose ``r``-ball looks like the Cayley ball, with the isomorphisms."""
    cache = (_walk_tree(u, r), word_lengths(u, r))
    out = {}
    for v in range(graph.n_vertices):
        psi = ball_isomorphism(graph, u, v, r, cache)
        if psi is not None:
            out[v] = psi
    return out


def packing_subset(graph: LabeledGraph, V3r: Iterable[int], r: int) -> list[int]:
    """Greedy ``V'``: pairwise disjoint ``r``-balls, scanned in vertex order."""
    chosen, used = [], set()
    for v in sorted(V3r):
        B = graph.ball(v, r)
        if used.isdisjoint(B):
            chosen.append(v)
            used |= B
    return chosen


def check_packing(graph: LabeledGraph, V3r: Iterable[int], Vp: Sequence[int], r: int) -> tuple[bool, bool]:
    """(balls of radius ``r`` disjoint, ``V(3r)`` covered by radius ``2r`` balls)."""
    seen: set = set()
    disjoint = True
    for v in Vp:
        B = graph.ball(v, r)
        if not seen.isdisjoint(B):
            disjoint = False
        seen |= B
    cover: set = set()
    for v in Vp:
        cover |= graph.ball(v, 2 * r)
    return disjoint, set(V3r) <= cover


# ---------------------------------------------------------------------------
# Phi


def build_phi(ca, witness: SoficWitness, r: int):
    """``Phi(x)(v) = f(x o psi_{v,r} on the memory)`` for ``v`` in ``V(3r)``.

    Returns the hom ``A^V -> A^{V(3r)}`` and the ordered vertex list ``V(3r)``.
    """
    B = ball(ca.universe, r)
    if any(m not in B for m in ca.memory):
        raise ValueError(f"memory is not inside the ball of radius {r}")
    V3 = witness.Vr(3 * r)
    targets = sorted(V3)
    positions = [[V3[v][m] for m in ca.memory] for v in targets]
    return ca.rule.spread(witness.graph.n_vertices, positions), targets


# ---------------------------------------------------------------------------
# exact comparisons of products of rational powers


Power = tuple  # (base: Fraction, exponent: Fraction)


def _as_fraction(x) -> Fraction:
    if isinstance(x, float):
        return Fraction(x).limit_denominator(10 ** 12)
    return Fraction(x)


def compare_products(lhs: Sequence[Power], rhs: Sequence[Power], max_bits: int = 1 << 18) -> int:
    """Sign of ``prod b^e (lhs) - prod b^e (rhs)`` for positive rational bases.

    Both sides are raised to the common exponent denominator, which makes
    everything an exact rational.  Oversized numbers go through interval
    arithmetic instead.
    """
    terms = [(Fraction(b), Fraction(e), 1) for b, e in lhs] + [(Fraction(b), Fraction(e), -1) for b, e in rhs]
    for b, _, _ in terms:
        if b <= 0:
            raise ValueError("bases must be positive")
    L = 1
    for _, e, _ in terms:
        L = L * e.denominator // math.gcd(L, e.denominator)
    bits = sum(abs(e * L) * (abs(b.numerator).bit_length() + b.denominator.bit_length()) for b, e, _ in terms)
    if bits <= max_bits:
        left, right = Fraction(1), Fraction(1)
        for b, e, side in terms:
            k = int(e * L)
            val = b ** k
            if side > 0:
                left *= val
            else:
                right *= val
        return (left > right) - (left < right)
    with mpmath.workprec(4096):
        iv = mpmath.iv
        s = iv.mpf(0)
        for b, e, side in terms:
            s += side * iv.mpf(e.numerator) / e.denominator * iv.log(iv.mpf(b.numerator) / b.denominator)
        if s.a > 0:
            return 1
        if s.b < 0:
            return -1
    raise ArithmeticError("comparison undecided at working precision")


def first_epsilon_condition(x0: int, b1: int, b2: int, eps) -> bool:
    """``|X0|^eps (1 - |X0|^-b1)^(1/(2 b2)) < 1``."""
    eps = _as_fraction(eps)
    if x0 == 1:
        return True
    base = 1 - Fraction(1, x0 ** b1)
    return compare_products([(x0, eps), (base, Fraction(1, 2 * b2))], []) < 0


def second_epsilon_condition(dimA: int, b2: int, eps) -> bool:
    """``0 < (1 - eps)^-1 < 1 + 1/(b2 dim A)``."""
    eps = _as_fraction(eps)
    if eps >= 1:
        return False
    return 0 < 1 / (1 - eps) < 1 + Fraction(1, b2 * dimA)


def epsilon_conditions(x0: int, dimA: int, r: int, ball_sizes: Sequence[int], eps) -> bool:
    """Both smallness conditions on ``eps``; the second only when ``dim A > 0``.

    ``ball_sizes`` holds ``|B(r)|`` and ``|B(2r)|``.
    """
    b1, b2 = ball_sizes
    ok = first_epsilon_condition(x0, b1, b2, eps)
    if dimA > 0:
        ok = ok and second_epsilon_condition(dimA, b2, eps)
    return ok


# ---------------------------------------------------------------------------
# audit


@dataclass(frozen=True)
class AuditLine:
    chain: str
    label: str
    kind: str  # premise | hypothesis | derived | fact
    relation: str
    lhs: float
    rhs: float
    holds: bool


@dataclass
class AuditReport:
    lines: list
    phi_surjective: bool
    numbers: dict
    notes: list

    @property
    def derived_hold(self) -> bool:
        return all(l.holds for l in self.lines if l.kind in ("derived", "premise"))

    @property
    def violated(self) -> list:
        return [l for l in self.lines if not l.holds and l.kind != "hypothesis"]

    @property
    def hypotheses(self) -> list:
        return [l for l in self.lines if l.kind == "hypothesis"]


def _line(chain, label, kind, relation, lhs_terms, rhs_terms) -> AuditLine:
    sign = compare_products(lhs_terms, rhs_terms)
    holds = {"<": sign < 0, "<=": sign <= 0, "=": sign == 0, ">=": sign >= 0, ">": sign > 0}[relation]

    def value(terms):
        return float(math.prod(float(Fraction(b)) ** float(Fraction(e)) for b, e in terms)) if terms else 1.0

    return AuditLine(chain, label, kind, relation, value(lhs_terms), value(rhs_terms), holds)


def _plain(chain, label, kind, relation, lhs, rhs) -> AuditLine:
    lhs, rhs = Fraction(lhs), Fraction(rhs)
    holds = {"<": lhs < rhs, "<=": lhs <= rhs, "=": lhs == rhs, ">=": lhs >= rhs, ">": lhs > rhs}[relation]
    return AuditLine(chain, label, kind, relation, float(lhs), float(rhs), holds)


def counting_audit(ca, witness: SoficWitness, r: int, eps=None) -> AuditReport:
    """Recompute both inequality chains of the sofic counting argument.

    ``premise`` lines are the facts the argument starts from, ``hypothesis``
    lines are consequences of the assumption being refuted (they are expected
    to fail for the real automaton) and ``derived`` lines are the pure
    numeric steps, which must all hold.
    """
    eps = witness.epsilon if eps is None else _as_fraction(eps)
    u = ca.universe
    A = ca.alphabet
    dimA = dimension(A)
    x0 = pi0(A).order
    b1, b2 = len(ball(u, r)), len(ball(u, 2 * r))
    graph = witness.graph
    nV = graph.n_vertices
    V3 = witness.Vr(3 * r)
    nV3 = len(V3)
    Vp = packing_subset(graph, V3, r)
    nVp = len(Vp)
    disjoint, covered = check_packing(graph, V3, Vp, r)
    phi, targets = build_phi(ca, witness, r)
    notes = []
    if isinstance(phi, SymbolicHom):
        phi_dim = phi.rank()
        phi0 = pi0_hom(phi)
    else:
        phi_dim = 0
        phi0 = phi
    try:
        phi0_image = phi0.image_order()
    except TooLarge:
        phi0_image = None
        notes.append("component image too large to count")
    full0 = x0 ** nV3
    surjective = phi_dim == dimA * nV3 and phi0_image == full0
    numbers = {"|V|": nV, "|V(3r)|": nV3, "|V'|": nVp, "|B(r)|": b1, "|B(2r)|": b2,
               "dim A": dimA, "|X0|": x0, "dim Phi(A^V)": phi_dim, "|Phi0(X0^V)|": phi0_image, "epsilon": str(eps)}
    lines = [
        AuditLine("premise", "|X0|^eps (1 - |X0|^-|B(r)|)^(1/(2|B(2r)|)) < 1", "premise", "<",
                  float(x0) ** float(eps) * (1 - x0 ** -b1) ** (1 / (2 * b2)), 1.0,
                  first_epsilon_condition(x0, b1, b2, eps)),
        _plain("premise", "|V(3r)| >= (1 - eps)|V|", "premise", ">=", nV3, (1 - eps) * nV),
        _plain("premise", "(1 - eps)|V| > |V|/2", "premise", ">", (1 - eps) * nV, Fraction(nV, 2)),
        _plain("premise", "|V(3r)| <= |V'| |B(2r)|", "premise", "<=", nV3, nVp * b2),
        AuditLine("premise", "packing: r-balls disjoint", "premise", "=", 1, 1, disjoint),
        AuditLine("premise", "packing: V(3r) covered by 2r-balls", "premise", "=", 1, 1, covered),
        AuditLine("fact", "Phi(A^V) = A^{V(3r)}", "fact", "=", phi_dim, dimA * nV3, surjective),
    ]
    if dimA == 0:
        notes.append("dim A = 0: the finite-alphabet theorem is used instead of the dimension chain")
    else:
        lines.append(_plain("premise", "(1 - eps)^-1 < 1 + 1/(|B(2r)| dim A)", "premise", "<",
                            1 / (1 - eps), 1 + Fraction(1, b2 * dimA)))
        inv = 1 / (1 - eps)
        top = nV * dimA - nVp
        mid = inv * nV3 * dimA - Fraction(nV3, b2)
        lines += [
            _plain("dimension", "dim Phi(A^V) <= |V| dim A - |V'|", "hypothesis", "<=", phi_dim, top),
            _plain("dimension", "|V| dim A - |V'| <= (1-eps)^-1 |V(3r)| dim A - |V(3r)|/|B(2r)|", "derived", "<=", top, mid),
            _plain("dimension", "... = |V(3r)| dim A ((1-eps)^-1 - 1/(|B(2r)| dim A))", "derived", "=", mid,
                   nV3 * dimA * (inv - Fraction(1, b2 * dimA))),
            _plain("dimension", "... < |V(3r)| dim A", "derived", "<", mid, nV3 * dimA),
        ]
    if x0 == 1:
        notes.append("|X0| = 1: the component chain is vacuous")
    else:
        q = 1 - Fraction(1, x0 ** b1)
        c1 = [(x0, nV - nVp * b1), (x0 ** b1 - 1, nVp)]
        c2 = [(x0, nV), (q, nVp)]
        c3 = [(x0, nV), (q, Fraction(nV3, b2))]
        c4 = [(x0, nV), (q, Fraction(nV, 2 * b2))]
        c5 = [(x0, nV - eps * nV)]
        c6 = [(x0, nV3)]
        if phi0_image is not None:
            lines.append(_line("components", "|Phi0(X0^V)| <= |X0|^(|V|-|V'||B(r)|) (|X0|^|B(r)| - 1)^|V'|",
                               "hypothesis", "<=", [(phi0_image, 1)], c1))
        lines += [
            _line("components", "... = |X0|^|V| (1 - |X0|^-|B(r)|)^|V'|", "derived", "=", c1, c2),
            _line("components", "... <= |X0|^|V| (1 - |X0|^-|B(r)|)^(|V(3r)|/|B(2r)|)", "derived", "<=", c2, c3),
            _line("components", "... < |X0|^|V| (1 - |X0|^-|B(r)|)^(|V|/(2|B(2r)|))", "derived", "<", c3, c4),
            _line("components", "... < |X0|^((1-eps)|V|)", "derived", "<", c4, c5),
            _line("components", "... < |X0|^|V(3r)|", "derived", "<", c5, c6),
        ]
    return AuditReport(lines, surjective, numbers, notes)


# ---------------------------------------------------------------------------
# tilings


@dataclass(frozen=True)
class Tiling:
    universe: GroupUniverse
    E: tuple
    E_prime: tuple
    centers: tuple
    region: tuple
    interior: tuple

    def tiles_disjoint(self) -> bool:
        seen: set = set()
        for g in self.centers:
            tile = {self.universe._mul(g, x) for x in self.E}
            if not seen.isdisjoint(tile):
                return False
            seen |= tile
        return True

    def covers(self, points: Iterable) -> bool:
        u = self.universe
        cover = {u._mul(g, x) for g in self.centers for x in self.E_prime}
        return all(p in cover for p in points)


def greedy_tiling(u: GroupUniverse, E: Iterable, region: Iterable) -> Tiling:
    """Scan ``region`` in canonical order; keep ``g`` when ``gE`` misses every kept tile.

    Any rejected ``h`` has ``hE`` meeting some ``gE``, so ``h`` lies in
    ``g E E^-1``: the ``E'``-translates cover the whole region.
    """
    E = u.sorted(set(u.check(x) for x in E))
    if not E:
        raise ValueError("tile shape must be nonempty")
    E_prime = u.set_product(E, [u._inv(x) for x in E])
    region = u.sorted(set(region))
    region_set = set(region)
    used: set = set()
    centers = []
    for g in region:
        tile = {u._mul(g, x) for x in E}
        if used.isdisjoint(tile):
            centers.append(g)
            used |= tile
    interior = [h for h in region if all(u._mul(h, x) in region_set for x in E_prime)]
    return Tiling(u, tuple(E), tuple(E_prime), tuple(centers), tuple(region), tuple(interior))
