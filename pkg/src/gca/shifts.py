"""One-dimensional shift spaces: de Bruijn graphs, image automata and SFTs.

Everything here is about the universe ``Z`` with a finite alphabet.  A
cellular automaton is viewed through its window ``[lo, hi]``: the output at
site ``g`` reads ``c(g + lo), ..., c(g + hi)``.
"""

from __future__ import annotations

import itertools
import math
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .alphabet import ENUMERATION_LIMIT, FiniteGroup, TooLarge
from .automaton import CellularAutomaton, PeriodicConfig
from .groups import Lattice


def _require_line(ca: CellularAutomaton) -> None:
    if not (isinstance(ca.universe, Lattice) and ca.universe.dim == 1):
        raise ValueError("this construction needs the universe Z")
    if not isinstance(ca.alphabet, FiniteGroup):
        raise TypeError("this construction needs a finite alphabet")


@dataclass(frozen=True)
class DeBruijnGraph:
    """Vertices are words of length ``w - 1``; the edge for the window ``x``
    goes from ``x[:-1]`` to ``x[1:]`` and carries the output ``f(x)``."""

    alphabet: FiniteGroup
    lo: int
    width: int
    letters: tuple
    outputs: dict = field(repr=False)

    @classmethod
    def of(cls, ca: CellularAutomaton) -> "DeBruijnGraph":
        _require_line(ca)
        lo, hi = min(ca.memory), max(ca.memory)
        w = hi - lo + 1
        A = ca.alphabet
        if A.order ** w > ENUMERATION_LIMIT:
            raise TooLarge("de Bruijn graph too large")
        offsets = [m - lo for m in ca.memory]
        letters = tuple(A.elements)
        outputs = {}
        for x in itertools.product(letters, repeat=w):
            outputs[x] = ca.local([x[i] for i in offsets])
        return cls(A, lo, w, letters, outputs)

    @property
    def zero(self) -> tuple:
        return (self.alphabet.identity,) * (self.width - 1)

    def vertices(self) -> list:
        return list(itertools.product(self.letters, repeat=self.width - 1))

    def edges_from(self, u: tuple):
        """``(letter, target, output)`` for every edge leaving ``u``."""
        for a in self.letters:
            x = u + (a,)
            yield a, x[1:], self.outputs[x]


# ---------------------------------------------------------------------------
# image automaton


@dataclass
class ImageAutomaton:
    """Subset automaton of the de Bruijn graph read on outputs.

    Every de Bruijn vertex lies on a bi-infinite path, so the words accepted
    from the full vertex set are exactly the finite windows of the image.
    """

    graph: DeBruijnGraph
    start: frozenset
    delta: dict

    def count_words(self, n: int) -> int:
        counts = {self.start: 1}
        for _ in range(n):
            nxt: dict = {}
            for S, k in counts.items():
                for a in self.graph.letters:
                    T = self.delta[S][a]
                    if T:
                        nxt[T] = nxt.get(T, 0) + k
            counts = nxt
        return sum(counts.values())

    def accepts(self, word: Sequence) -> bool:
        S = self.start
        for a in word:
            S = self.delta[S][a]
            if not S:
                return False
        return True

    def shortest_rejected(self) -> tuple | None:
        """A shortest orphan word, or ``None`` if every word is accepted."""
        prev = {self.start: None}
        queue = deque([self.start])
        while queue:
            S = queue.popleft()
            for a in self.graph.letters:
                T = self.delta[S][a]
                if not T:
                    word = [a]
                    while prev[S] is not None:
                        S, b = prev[S]
                        word.append(b)
                    return tuple(reversed(word))
                if T not in prev:
                    prev[T] = (S, a)
                    queue.append(T)
        return None

    def is_universal(self) -> bool:
        return self.shortest_rejected() is None


def image_automaton(ca: CellularAutomaton) -> ImageAutomaton:
    G = DeBruijnGraph.of(ca)
    step: dict = {}
    for u in G.vertices():
        for _, v, y in G.edges_from(u):
            step.setdefault((u, y), set()).add(v)
    start = frozenset(G.vertices())
    delta: dict = {}
    queue = deque([start])
    while queue:
        S = queue.popleft()
        if S in delta:
            continue
        row = {}
        for a in G.letters:
            T = frozenset(v for u in S for v in step.get((u, a), ()))
            row[a] = T
            if T and T not in delta:
                queue.append(T)
        delta[S] = row
    return ImageAutomaton(G, start, delta)


def orphan_word(ca: CellularAutomaton) -> tuple | None:
    return image_automaton(ca).shortest_rejected()


def preimage_counts(ca: CellularAutomaton, n: int) -> dict:
    """Number of length ``n + w - 1`` words mapping onto each length ``n`` word."""
    G = DeBruijnGraph.of(ca)
    A = ca.alphabet
    length = n + G.width - 1
    if A.order ** length > ENUMERATION_LIMIT:
        raise TooLarge("too many preimage words")
    counts = {y: 0 for y in itertools.product(G.letters, repeat=n)}
    for x in itertools.product(G.letters, repeat=length):
        y = tuple(G.outputs[x[i:i + G.width]] for i in range(n))
        counts[y] += 1
    return counts


# ---------------------------------------------------------------------------
# kernel words


def _word_to_patch(word: Sequence, start: int) -> dict:
    return {start + i: a for i, a in enumerate(word)}


def finite_kernel_word(ca: CellularAutomaton) -> dict | None:
    """A nonzero finitely supported ``c`` with ``tau(c) = e``, as a patch.

    Such a ``c`` is a de Bruijn path from the zero vertex back to it that
    only uses edges with output ``e`` and starts with a nonzero letter.
    Returns ``None`` when none exists, which for group automata means
    pre-injectivity.
    """
    G = DeBruijnGraph.of(ca)
    e = ca.alphabet.identity
    z = G.zero
    if G.width == 1:
        for a in G.letters:
            if a != e and G.outputs[(a,)] == e:
                return {0: a}
        return None
    prev: dict = {}
    queue: deque = deque()
    for a, v, y in G.edges_from(z):
        if a != e and y == e and v not in prev:
            prev[v] = (None, a)
            queue.append(v)
    while queue:
        u = queue.popleft()
        if u == z:
            break
        for a, v, y in G.edges_from(u):
            if y == e and v not in prev:
                prev[v] = (u, a)
                queue.append(v)
    if z not in prev:
        return None
    word = []
    u = z
    while u is not None:
        u, a = prev[u]
        word.append(a)
    word.reverse()
    # drop the trailing zeros that return the path to the zero vertex
    core = word[: len(word) - (G.width - 1)]
    return _word_to_patch(core, 0)


def periodic_kernel_config(ca: CellularAutomaton) -> PeriodicConfig | None:
    """A nonzero periodic ``c`` with ``tau(c) = e``: a cycle of the output-``e``
    subgraph other than the zero loop.  ``tau(c) = tau(e)`` then shows that
    ``tau`` is not injective."""
    G = DeBruijnGraph.of(ca)
    e = ca.alphabet.identity
    z = G.zero
    if G.width == 1:
        for a in G.letters:
            if a != e and G.outputs[(a,)] == e:
                return PeriodicConfig.from_word([a])
        return None
    succ = {u: [(a, v) for a, v, y in G.edges_from(u) if y == e and not (u == z and v == z)] for u in G.vertices()}
    colour = {u: 0 for u in succ}
    for root in G.vertices():
        if colour[root]:
            continue
        stack = [(root, iter(succ[root]))]
        path: list = []
        colour[root] = 1
        while stack:
            u, it = stack[-1]
            nxt = next(it, None)
            if nxt is None:
                colour[u] = 2
                stack.pop()
                if path:
                    path.pop()
                continue
            a, v = nxt
            if colour[v] == 1:
                # the cycle runs from v back to v along the current stack
                idx = next(i for i, (w, _) in enumerate(stack) if w == v)
                cycle = path[idx:] + [a]
                return PeriodicConfig.from_word(cycle)
            if colour[v] == 0:
                colour[v] = 1
                stack.append((v, iter(succ[v])))
                path.append(a)
    return None


def single_site_corrections(ca: CellularAutomaton) -> dict:
    """For each letter ``a`` a finite patch ``c`` with ``tau(c)`` equal to ``a``
    at site 0 and ``e`` elsewhere, or ``None`` when no such patch exists.

    The search runs on pairs (de Bruijn vertex, whether the deviation has
    been emitted).
    """
    G = DeBruijnGraph.of(ca)
    e = ca.alphabet.identity
    z = G.zero
    out = {}
    for target in G.letters:
        if target == e:
            out[target] = {}
            continue
        start = (z, 0)
        prev = {start: None}
        queue = deque([start])
        goal = (z, 1)
        while queue and goal not in prev:
            u, phase = queue.popleft()
            for a, v, y in G.edges_from(u):
                if y == e:
                    nxt = (v, phase)
                elif y == target and phase == 0:
                    nxt = (v, 1)
                else:
                    continue
                if nxt not in prev:
                    prev[nxt] = ((u, phase), a, y)
                    queue.append(nxt)
        if goal not in prev:
            out[target] = None
            continue
        letters = []
        s = goal
        while prev[s] is not None:
            s, a, _ = prev[s]
            letters.append(a)
        letters.reverse()
        word = [e] * (G.width - 1) + letters
        patch = {i: a for i, a in enumerate(word) if a != e}
        out[target] = _normalise_patch(ca, patch, target)
    return out


def _normalise_patch(ca: CellularAutomaton, patch: dict, target) -> dict:
    """Shift ``patch`` so its image deviates exactly at site 0."""
    from .automaton import apply_patch

    if not patch:
        return patch
    e = ca.alphabet.identity
    lo, hi = min(ca.memory), max(ca.memory)
    a, b = min(patch), max(patch)
    full = {g: patch.get(g, e) for g in range(a - hi + lo, b - lo + hi + 1)}
    img = apply_patch(ca, full, range(a - hi, b - lo + 1))
    hits = [g for g, y in img.items() if y != e]
    if len(hits) != 1 or img[hits[0]] != target:
        raise AssertionError("correction search produced a wrong patch")
    s = hits[0]
    return {g - s: v for g, v in patch.items()}


# ---------------------------------------------------------------------------
# subshifts of finite type


@dataclass(frozen=True)
class SFT:
    """Configurations whose every window of length ``D`` lies in ``allowed``."""

    alphabet: tuple
    D: int
    allowed: frozenset

    def __post_init__(self):
        if self.D < 1:
            raise ValueError("window length must be positive")
        allowed = frozenset(tuple(w) for w in self.allowed)
        for w in allowed:
            if len(w) != self.D or any(a not in self.alphabet for a in w):
                raise ValueError(f"bad allowed word {w!r}")
        object.__setattr__(self, "allowed", allowed)
        object.__setattr__(self, "alphabet", tuple(self.alphabet))

    @classmethod
    def from_strings(cls, alphabet: str, words: Iterable[str]) -> "SFT":
        words = list(words)
        return cls(tuple(alphabet), len(words[0]) if words else 1, frozenset(tuple(w) for w in words))

    @classmethod
    def full(cls, alphabet: Sequence) -> "SFT":
        return cls(tuple(alphabet), 1, frozenset((a,) for a in alphabet))

    def _edges(self) -> dict:
        succ: dict = {}
        for w in self.allowed:
            succ.setdefault(w[:-1], set()).add((w[-1], w[1:]))
        return succ

    def essential(self) -> tuple[list, dict]:
        """States (words of length ``D - 1``) on some bi-infinite path, with edges."""
        succ = self._edges()
        states = set(succ) | {v for es in succ.values() for _, v in es}
        changed = True
        while changed:
            changed = False
            has_in = {v for u in states for _, v in succ.get(u, ()) if v in states}
            keep = {u for u in states if u in has_in and any(v in states for _, v in succ.get(u, ()))}
            if keep != states:
                states, changed = keep, True
        order = sorted(states)
        edges = {u: sorted((a, v) for a, v in succ.get(u, ()) if v in states) for u in order}
        return order, edges

    def is_admissible(self, word: Sequence) -> bool:
        return self._path(list(word)) is not None

    def _path(self, pattern: list) -> list | None:
        """Fill ``None`` entries of ``pattern`` so the word occurs in a point."""
        states, edges = self.essential()
        if not states:
            return None
        layer = {s: None for s in states}
        history = [layer]
        for sym in pattern:
            nxt: dict = {}
            for u in layer:
                for a, v in edges[u]:
                    if (sym is None or a == sym) and v not in nxt:
                        nxt[v] = (u, a)
            if not nxt:
                return None
            history.append(nxt)
            layer = nxt
        v = next(iter(layer))
        out = []
        for i in range(len(pattern), 0, -1):
            u, a = history[i][v]
            out.append(a)
            v = u
        return list(reversed(out))


@dataclass(frozen=True)
class GluingGap:
    delta: float  # an int or math.inf

    @property
    def finite(self) -> bool:
        return self.delta != math.inf


def _bool_mul(X: list[list[bool]], Y: list[list[bool]]) -> list[list[bool]]:
    n = len(X)
    return [[any(X[i][k] and Y[k][j] for k in range(n)) for j in range(n)] for i in range(n)]


def strong_irreducibility_gap(sft: SFT) -> GluingGap:
    """Least ``k`` such that any two admissible words glue with ``k`` letters in between
    (and with any longer filler); infinite when the SFT is not mixing."""
    states, edges = sft.essential()
    n = len(states)
    if n == 0:
        return GluingGap(math.inf)
    where = {s: i for i, s in enumerate(states)}
    M = [[False] * n for _ in range(n)]
    for u, es in edges.items():
        for _, v in es:
            M[where[u]][where[v]] = True
    # primitive matrices become positive by step (n - 1)^2 + 1
    limit = (n - 1) ** 2 + 1
    power = [[i == j for j in range(n)] for i in range(n)]
    positive = []
    for _ in range(limit + 1):
        positive.append(all(all(row) for row in power))
        power = _bool_mul(power, M)
    if not positive[-1]:
        return GluingGap(math.inf)
    k0 = len(positive) - 1
    while k0 > 0 and positive[k0 - 1]:
        k0 -= 1
    return GluingGap(max(0, k0 - (sft.D - 1)))


def glue(sft: SFT, x: Sequence, y: Sequence, k: int) -> tuple:
    """An admissible word ``x m y`` with ``|m| = k``."""
    gap = strong_irreducibility_gap(sft)
    if k < gap.delta:
        raise ValueError(f"gap {k} is below the gluing gap {gap.delta}")
    for w in (x, y):
        if not sft.is_admissible(w):
            raise ValueError(f"{tuple(w)!r} is not admissible")
    filled = sft._path(list(x) + [None] * k + list(y))
    if filled is None:
        raise AssertionError("gluing failed above the computed gap")
    return tuple(filled)
