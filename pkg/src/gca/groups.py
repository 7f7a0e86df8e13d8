"""Finitely generated groups used as cellular-automaton universes.

Elements are plain hashable Python values in canonical form:

* ``Lattice(1)`` (the integers): ``int``
* ``Lattice(d)`` for ``d >= 2``: ``tuple`` of ``d`` ints
* ``FiniteUniverse``: the element values of the underlying finite group
* ``FreeGroup``: reduced words, tuples of nonzero ints where ``i`` stands
  for the ``i``-th generator and ``-i`` for its inverse
"""

from __future__ import annotations

import string
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Hashable, Iterable, Sequence

from .alphabet import FiniteGroup, cyclic

Element = Hashable


class UniverseMismatch(ValueError):
    """An element does not belong to the universe it was used with."""


class NotAmenable(ValueError):
    """The operation needs a Følner sequence and the universe has none."""


class GroupUniverse:
    """Base class: a group together with a finite symmetric generating list."""

    kind: str = ""
    amenable: bool = True
    generators: tuple

    def identity(self) -> Element:
        raise NotImplementedError

    def contains(self, x: Any) -> bool:
        raise NotImplementedError

    def _mul(self, a, b):
        raise NotImplementedError

    def _inv(self, a):
        raise NotImplementedError

    def sort_key(self, x) -> Any:
        return x

    def check(self, x) -> Element:
        if not self.contains(x):
            raise UniverseMismatch(f"{x!r} is not an element of {self}")
        return x

    def mul(self, a, b) -> Element:
        return self._mul(self.check(a), self.check(b))

    def inv(self, a) -> Element:
        return self._inv(self.check(a))

    def product(self, *xs) -> Element:
        out = self.identity()
        for x in xs:
            out = self.mul(out, x)
        return out

    def sorted(self, xs: Iterable[Element]) -> list:
        return sorted(xs, key=self.sort_key)

    def set_product(self, X: Iterable[Element], Y: Iterable[Element]) -> list:
        Y = list(Y)
        return self.sorted({self._mul(x, y) for x in X for y in Y})

    def _validate_generators(self) -> None:
        gens = list(self.generators)
        if not gens:
            raise ValueError("empty generating set")
        for g in gens:
            self.check(g)
        if set(gens) != {self._inv(g) for g in gens}:
            raise ValueError("generating set is not symmetric")


@dataclass(frozen=True)
class Lattice(GroupUniverse):
    """The free abelian group ``Z^dim`` (``Z`` itself when ``dim == 1``)."""

    dim: int = 1
    generators: tuple = ()

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("lattice dimension must be positive")
        if not self.generators:
            if self.dim == 1:
                gens = (1, -1)
            else:
                gens = tuple(
                    tuple(s * int(i == k) for i in range(self.dim))
                    for k in range(self.dim) for s in (1, -1)
                )
            object.__setattr__(self, "generators", gens)
        else:
            object.__setattr__(self, "generators", tuple(self._canon(g) for g in self.generators))
        self._validate_generators()

    @property
    def kind(self) -> str:
        return "Z" if self.dim == 1 else "Zd"

    def __str__(self) -> str:
        return "Z" if self.dim == 1 else f"Z^{self.dim}"

    def _canon(self, x):
        if self.dim == 1:
            return int(x[0]) if isinstance(x, (tuple, list)) else int(x)
        return tuple(int(v) for v in x)

    def element(self, x) -> Element:
        return self.check(self._canon(x))

    def identity(self):
        return 0 if self.dim == 1 else (0,) * self.dim

    def contains(self, x) -> bool:
        if self.dim == 1:
            return isinstance(x, int) and not isinstance(x, bool)
        return isinstance(x, tuple) and len(x) == self.dim and all(isinstance(v, int) for v in x)

    def _mul(self, a, b):
        if self.dim == 1:
            return a + b
        return tuple(x + y for x, y in zip(a, b))

    def _inv(self, a):
        if self.dim == 1:
            return -a
        return tuple(-x for x in a)

    def vec(self, x) -> tuple[int, ...]:
        return (x,) if self.dim == 1 else x

    def from_vec(self, v: Sequence[int]):
        return v[0] if self.dim == 1 else tuple(v)


@dataclass(frozen=True)
class FiniteUniverse(GroupUniverse):
    """A finite group, elements compared by their index in the group."""

    group: FiniteGroup = field(default_factory=lambda: cyclic(1))
    generators: tuple = ()

    kind = "finite"

    def __post_init__(self):
        if not self.generators:
            gens = []
            for g in self.group.elements:
                if g != self.group.identity:
                    gens.append(g)
            if not gens:
                gens = [self.group.identity]
            object.__setattr__(self, "generators", tuple(gens))
        self._validate_generators()

    def __str__(self) -> str:
        return f"finite({self.group})"

    def identity(self):
        return self.group.identity

    def contains(self, x) -> bool:
        return self.group.contains(x)

    def _mul(self, a, b):
        return self.group.mul(a, b)

    def _inv(self, a):
        return self.group.inv(a)

    def sort_key(self, x):
        return self.group.index(x)

    @property
    def order(self) -> int:
        return self.group.order


def _letter_key(a: int) -> tuple[int, int]:
    return (abs(a), 0 if a > 0 else 1)


@dataclass(frozen=True)
class FreeGroup(GroupUniverse):
    """Free group on ``rank`` generators, written ``a, b, c, ...``.

    Upper-case letters denote inverses in the string syntax, so ``"aB"`` is
    the word ``a b^-1``.
    """

    rank: int = 2
    generators: tuple = ()

    kind = "free"

    def __post_init__(self):
        if not 1 <= self.rank <= 26:
            raise ValueError("free group rank must be between 1 and 26")
        if not self.generators:
            gens = tuple((s * i,) for i in range(1, self.rank + 1) for s in (1, -1))
            object.__setattr__(self, "generators", gens)
        else:
            object.__setattr__(self, "generators", tuple(self.element(g) for g in self.generators))
        self._validate_generators()

    @property
    def amenable(self) -> bool:  # type: ignore[override]
        return self.rank == 1

    def __str__(self) -> str:
        return f"F_{self.rank}"

    def identity(self):
        return ()

    def contains(self, x) -> bool:
        if not isinstance(x, tuple):
            return False
        for i, a in enumerate(x):
            if not isinstance(a, int) or a == 0 or abs(a) > self.rank:
                return False
            if i and x[i - 1] == -a:
                return False
        return True

    @staticmethod
    def reduce(word: Iterable[int]) -> tuple[int, ...]:
        out: list[int] = []
        for a in word:
            if out and out[-1] == -a:
                out.pop()
            else:
                out.append(a)
        return tuple(out)

    def element(self, x) -> tuple[int, ...]:
        if isinstance(x, str):
            letters = []
            for ch in x:
                if ch in "1e":
                    continue
                i = string.ascii_lowercase.index(ch.lower()) + 1
                letters.append(i if ch.islower() else -i)
            x = letters
        return self.check(self.reduce(int(a) for a in x))

    def format(self, x: tuple[int, ...]) -> str:
        if not x:
            return "1"
        return "".join(
            string.ascii_lowercase[abs(a) - 1] if a > 0 else string.ascii_uppercase[abs(a) - 1]
            for a in x
        )

    def _mul(self, a, b):
        return self.reduce(a + b)

    def _inv(self, a):
        return tuple(-x for x in reversed(a))

    def sort_key(self, x):
        return (len(x), tuple(_letter_key(a) for a in x))


@dataclass(frozen=True)
class Ball:
    universe: GroupUniverse
    radius: int
    elements: tuple
    index: dict = field(compare=False, repr=False)

    def __contains__(self, x) -> bool:
        return x in self.index

    def __iter__(self):
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)


def word_lengths(u: GroupUniverse, r: int) -> dict:
    """Word-metric distance from the identity for every element within ``r``."""
    if r < 0:
        raise ValueError("radius must be nonnegative")
    one = u.identity()
    dist = {one: 0}
    frontier = deque([one])
    while frontier:
        g = frontier.popleft()
        if dist[g] == r:
            continue
        for s in u.generators:
            h = u._mul(g, s)
            if h not in dist:
                dist[h] = dist[g] + 1
                frontier.append(h)
    return dist


def ball(u: GroupUniverse, r: int) -> Ball:
    elements = tuple(u.sorted(word_lengths(u, r)))
    return Ball(u, r, elements, {g: i for i, g in enumerate(elements)})


def cayley_ball_graph(u: GroupUniverse, r: int):
    """Cayley graph restricted to ``ball(u, r)``; vertices are ball positions."""
    from .sofic import LabeledGraph

    B = ball(u, r)
    edges = []
    for i, g in enumerate(B.elements):
        for s_idx, s in enumerate(u.generators):
            h = u._mul(g, s)
            if h in B.index:
                edges.append((i, s_idx, B.index[h]))
    return LabeledGraph(len(B), len(u.generators), edges)


@dataclass(frozen=True)
class FolnerBox:
    index: int
    elements: tuple

    def __len__(self) -> int:
        return len(self.elements)


def box(u: Lattice, shape: Sequence[int], origin: Sequence[int] | None = None) -> list:
    """Rectangular box ``origin + [0, n_1) x ... x [0, n_d)`` in canonical order."""
    import itertools

    if len(shape) != u.dim:
        raise ValueError("box shape does not match lattice dimension")
    origin = origin or (0,) * u.dim
    pts = itertools.product(*(range(o, o + n) for o, n in zip(origin, shape)))
    return [u.from_vec(p) for p in pts]


def folner_box(u: GroupUniverse, i: int) -> FolnerBox:
    """``i``-th set of the fixed exhausting sequence: ``[0, 2^i)^d`` or the whole group."""
    if i < 0:
        raise ValueError("Følner index must be nonnegative")
    if isinstance(u, Lattice):
        return FolnerBox(i, tuple(box(u, (2 ** i,) * u.dim)))
    if isinstance(u, FiniteUniverse):
        return FolnerBox(i, tuple(u.sorted(u.group.elements)))
    if isinstance(u, FreeGroup) and u.rank == 1:
        n = 2 ** i
        return FolnerBox(i, tuple(u.sorted(((1,) * k if k > 0 else (-1,) * -k) for k in range(n))))
    raise NotAmenable(f"{u} has no Følner sequence")


def folner_ratio(u: GroupUniverse, F: Iterable[Element], g: Element) -> Fraction:
    """``|F \\ F g| / |F|``."""
    F = list(F)
    shifted = {u.mul(x, g) for x in F}
    return Fraction(sum(1 for x in F if x not in shifted), len(F))
