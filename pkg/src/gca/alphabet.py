"""Alphabets and homomorphisms between their powers.

Two kinds of alphabet exist.  A :class:`FiniteGroup` is an explicit finite
group, either abelian (given by invariant factors) or given by a
multiplication table.  A :class:`SymbolicAlphabet` models an algebraic
group as ``D^g x P`` where ``D`` is a divisible connected group (torus,
elliptic curve or vector group) and ``P`` a finite abelian component group.
Symbolic points are never enumerated; every question about them is reduced
to integer matrices.

A homomorphism ``A^m -> A^n`` is a :class:`Hom`.  Abelian finite groups
use :class:`MatrixHom` (an integer matrix acting on coordinate vectors),
table groups use :class:`FunctionHom`, and symbolic alphabets use
:class:`SymbolicHom` (a connected-part matrix plus a component map).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import cached_property, reduce
from typing import Any, Callable, Hashable, Iterable, Mapping, Sequence

from . import lattice

ENUMERATION_LIMIT = 1 << 20


class TooLarge(RuntimeError):
    """Exhaustive enumeration would exceed :data:`ENUMERATION_LIMIT`."""


class NotAHomomorphism(ValueError):
    pass


# ---------------------------------------------------------------------------
# finite groups


class FiniteGroup:
    elements: tuple
    identity: Hashable
    dim = 0

    @property
    def order(self) -> int:
        return len(self.elements)

    @cached_property
    def _index(self) -> dict:
        return {x: i for i, x in enumerate(self.elements)}

    def index(self, x) -> int:
        return self._index[x]

    def contains(self, x) -> bool:
        try:
            return x in self._index
        except TypeError:
            return False

    def mul(self, a, b):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    @property
    def is_abelian(self) -> bool:
        return all(self.mul(a, b) == self.mul(b, a) for a in self.elements for b in self.elements)

    def power(self, m: int) -> Iterable[tuple]:
        return itertools.product(self.elements, repeat=m)

    def pmul(self, x: Sequence, y: Sequence) -> tuple:
        return tuple(self.mul(a, b) for a, b in zip(x, y))

    def subgroup(self, gens: Iterable) -> frozenset:
        """Subgroup generated by ``gens``."""
        found = {self.identity}
        frontier = [self.identity]
        gens = [g for g in set(gens) if g != self.identity]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = self.mul(x, g)
                    if y not in found:
                        found.add(y)
                        nxt.append(y)
            frontier = nxt
        return frozenset(found)


class AbelianGroup(FiniteGroup):
    """``Z/n_1 x ... x Z/n_k``.  Elements are ints when ``k == 1``, else tuples."""

    def __init__(self, factors: Sequence[int]):
        factors = tuple(int(n) for n in factors)
        if any(n < 1 for n in factors):
            raise ValueError("invariant factors must be positive")
        self.factors = tuple(n for n in factors if n > 1)
        k = len(self.factors)
        if k == 1:
            self.elements = tuple(range(self.factors[0]))
            self.identity = 0
        else:
            self.elements = tuple(itertools.product(*(range(n) for n in self.factors)))
            self.identity = (0,) * k

    def __repr__(self) -> str:
        return f"AbelianGroup({list(self.factors)})"

    def __str__(self) -> str:
        if not self.factors:
            return "1"
        return " x ".join(f"Z/{n}" for n in self.factors)

    def __eq__(self, other) -> bool:
        return isinstance(other, AbelianGroup) and self.factors == other.factors

    def __hash__(self) -> int:
        return hash(("abelian", self.factors))

    @property
    def rank(self) -> int:
        return len(self.factors)

    @property
    def order(self) -> int:
        return math.prod(self.factors)

    def to_vec(self, x) -> tuple[int, ...]:
        return (x,) if len(self.factors) == 1 else tuple(x)

    def from_vec(self, v: Sequence[int]):
        v = tuple(int(a) % n for a, n in zip(v, self.factors))
        return v[0] if len(self.factors) == 1 else v

    def mul(self, a, b):
        if len(self.factors) == 1:
            return (a + b) % self.factors[0]
        return tuple((x + y) % n for x, y, n in zip(a, b, self.factors))

    def inv(self, a):
        if len(self.factors) == 1:
            return (-a) % self.factors[0]
        return tuple((-x) % n for x, n in zip(a, self.factors))

    @property
    def is_abelian(self) -> bool:
        return True

    def scale(self, c: int, a):
        return self.from_vec([c * x for x in self.to_vec(a)])


def cyclic(n: int) -> AbelianGroup:
    return AbelianGroup([n])


class TableGroup(FiniteGroup):
    """Finite group given by a multiplication table on ``0..n-1``."""

    def __init__(self, table: Sequence[Sequence[int]]):
        n = len(table)
        self.table = tuple(tuple(int(v) for v in row) for row in table)
        if n == 0 or any(len(row) != n for row in self.table):
            raise ValueError("multiplication table must be square and nonempty")
        if any(not 0 <= v < n for row in self.table for v in row):
            raise ValueError("table entries out of range")
        self.elements = tuple(range(n))
        ids = [e for e in range(n) if all(self.table[e][x] == x == self.table[x][e] for x in range(n))]
        if not ids:
            raise ValueError("table has no identity")
        self.identity = ids[0]
        for a, b, c in itertools.product(range(n), repeat=3):
            if self.table[self.table[a][b]][c] != self.table[a][self.table[b][c]]:
                raise ValueError("table is not associative")
        self._inverse = {}
        for a in range(n):
            inv = [b for b in range(n) if self.table[a][b] == self.identity]
            if len(inv) != 1 or self.table[inv[0]][a] != self.identity:
                raise ValueError("table has an element without a unique inverse")
            self._inverse[a] = inv[0]

    def __repr__(self) -> str:
        return f"TableGroup(order={len(self.table)})"

    def __eq__(self, other) -> bool:
        return isinstance(other, TableGroup) and self.table == other.table

    def __hash__(self) -> int:
        return hash(("table", self.table))

    def mul(self, a, b):
        return self.table[a][b]

    def inv(self, a):
        return self._inverse[a]


# ---------------------------------------------------------------------------
# symbolic alphabets


@dataclass(frozen=True)
class TorsionProfile:
    """Number of ``n``-torsion points of the divisible part: ``n``, ``n^2`` or ``1``."""

    kind: str

    def __post_init__(self):
        if self.kind not in ("torus", "elliptic", "vector"):
            raise ValueError(f"unknown divisible kind {self.kind!r}")

    def __call__(self, n: int) -> int:
        n = abs(n)
        if n == 0:
            raise ValueError("torsion of order 0 is not finite")
        if self.kind == "torus":
            return n
        if self.kind == "elliptic":
            return n * n
        return 1


@dataclass(frozen=True)
class SymbolicAlphabet:
    kind: str
    rank: int
    components: AbelianGroup = AbelianGroup([])

    def __post_init__(self):
        TorsionProfile(self.kind)
        if self.rank < 1:
            raise ValueError("symbolic rank must be positive")
        if not isinstance(self.components, AbelianGroup):
            raise TypeError("component group must be a finite abelian group")

    def __str__(self) -> str:
        base = {"torus": "Gm", "elliptic": "E", "vector": "Ga"}[self.kind]
        s = base if self.rank == 1 else f"{base}^{self.rank}"
        return s if not self.components.factors else f"{s} x ({self.components})"

    @property
    def dim(self) -> int:
        return self.rank

    @property
    def torsion(self) -> TorsionProfile:
        return TorsionProfile(self.kind)


Alphabet = Any  # FiniteGroup | SymbolicAlphabet


def pi0(A) -> FiniteGroup:
    """Group of connected components."""
    if isinstance(A, SymbolicAlphabet):
        return A.components
    return A


def dimension(A) -> int:
    return A.dim


# ---------------------------------------------------------------------------
# homomorphisms


class Hom:
    """Homomorphism ``A^m -> A^n`` over a fixed alphabet ``A``."""

    alphabet: Any
    m: int
    n: int

    def compose(self, inner: "Hom") -> "Hom":
        """``self o inner``."""
        raise NotImplementedError

    def spread(self, size: int, positions: Sequence[Sequence[int]]) -> "Hom":
        """Apply ``self`` at several places of a longer tuple.

        The result maps ``x`` in ``A^size`` to the concatenation of
        ``self(x[p_1], ..., x[p_m])`` over the index lists in ``positions``.
        """
        raise NotImplementedError

    def select(self, outputs: Sequence[int]) -> "Hom":
        """Keep only the given output coordinates."""
        return projection(self.alphabet, self.n, outputs).compose(self)

    def _check_compose(self, inner: "Hom") -> None:
        if inner.alphabet != self.alphabet:
            raise ValueError("alphabet mismatch in composition")
        if inner.n != self.m:
            raise ValueError(f"cannot compose A^{self.m} <- A^{inner.n}")


def identity_hom(A, m: int) -> Hom:
    return projection(A, m, range(m))


def projection(A, m: int, outputs: Iterable[int]) -> Hom:
    outputs = list(outputs)
    if any(not 0 <= i < m for i in outputs):
        raise IndexError("projection index out of range")
    if isinstance(A, SymbolicAlphabet):
        g = A.rank
        B = lattice.zeros(g * len(outputs), g * m)
        for j, i in enumerate(outputs):
            for t in range(g):
                B[j * g + t][i * g + t] = 1
        return SymbolicHom(A, m, len(outputs), B, projection(A.components, m, outputs))
    if isinstance(A, AbelianGroup):
        k = A.rank
        M = lattice.zeros(k * len(outputs), k * m)
        for j, i in enumerate(outputs):
            for t in range(k):
                M[j * k + t][i * k + t] = 1
        return MatrixHom(A, m, len(outputs), M)
    return FunctionHom(A, m, len(outputs), lambda x: tuple(x[i] for i in outputs))


def embedding(A, m: int, size: int, positions: Sequence[int]) -> Hom:
    """``A^m -> A^size`` placing coordinate ``i`` at ``positions[i]`` and ``e`` elsewhere."""
    positions = list(positions)
    if len(positions) != m or len(set(positions)) != m or any(not 0 <= p < size for p in positions):
        raise ValueError("embedding positions must be distinct and in range")
    if isinstance(A, SymbolicAlphabet):
        g = A.rank
        B = lattice.zeros(g * size, g * m)
        for i, p in enumerate(positions):
            for t in range(g):
                B[p * g + t][i * g + t] = 1
        return SymbolicHom(A, m, size, B, embedding(A.components, m, size, positions))
    if isinstance(A, AbelianGroup):
        k = A.rank
        M = lattice.zeros(k * size, k * m)
        for i, p in enumerate(positions):
            for t in range(k):
                M[p * k + t][i * k + t] = 1
        return MatrixHom(A, m, size, M)
    where = {p: i for i, p in enumerate(positions)}
    e = A.identity
    return FunctionHom(A, m, size, lambda x: tuple(x[where[j]] if j in where else e for j in range(size)))


class FiniteHom(Hom):
    def __call__(self, x: Sequence) -> tuple:
        raise NotImplementedError

    @property
    def domain_size(self) -> int:
        return self.alphabet.order ** self.m

    def _enumerate(self) -> Iterable[tuple]:
        if self.domain_size > ENUMERATION_LIMIT:
            raise TooLarge(f"|A|^{self.m} = {self.domain_size} exceeds the enumeration limit")
        return self.alphabet.power(self.m)

    def table(self) -> dict:
        return {x: self(x) for x in self._enumerate()}

    def image(self) -> frozenset:
        return frozenset(self(x) for x in self._enumerate())

    def image_order(self) -> int:
        return len(self.image())

    def kernel_order(self) -> int:
        return self.domain_size // self.image_order()

    def kernel_generators(self) -> list[tuple]:
        e = (self.alphabet.identity,) * self.n
        return [x for x in self._enumerate() if self(x) == e]

    def kernel_element(self) -> tuple | None:
        """A nontrivial kernel element, if any."""
        e = self.alphabet.identity
        for x in self.kernel_generators():
            if any(v != e for v in x):
                return x
        return None

    def is_injective(self) -> bool:
        return self.kernel_order() == 1

    def is_surjective(self) -> bool:
        return self.image_order() == self.alphabet.order ** self.n

    def contains_image(self, y: Sequence) -> bool:
        return tuple(y) in self.image()

    def subgroup_image(self, gens: Iterable[tuple]) -> frozenset:
        """Image of the subgroup of ``A^m`` generated by ``gens`` (as a subgroup of ``A^n``)."""
        A = self.alphabet
        e = (A.identity,) * self.n
        imgs = {self(x) for x in gens} - {e}
        found = {e}
        frontier = [e]
        while frontier:
            nxt = []
            for y in frontier:
                for g in imgs:
                    z = A.pmul(y, g)
                    if z not in found:
                        found.add(z)
                        nxt.append(z)
            frontier = nxt
        return frozenset(found)

    def equals(self, other: "FiniteHom") -> bool:
        if (self.m, self.n) != (other.m, other.n):
            return False
        return all(self(x) == other(x) for x in self._enumerate())


class MatrixHom(FiniteHom):
    """Hom of finite abelian groups given by an integer matrix.

    Coordinates are site-major: position ``i`` of ``A^m`` occupies columns
    ``i*k .. i*k + k - 1`` where ``k`` is the number of invariant factors.
    """

    def __init__(self, A: AbelianGroup, m: int, n: int, matrix: Sequence[Sequence[int]]):
        self.alphabet = A
        self.m, self.n = int(m), int(n)
        k = A.rank
        self.mods_in = A.factors * self.m
        self.mods_out = A.factors * self.n
        rows, cols = (len(matrix), len(matrix[0]) if matrix else 0)
        if k and (rows != k * self.n or (rows and cols != k * self.m)):
            raise ValueError(f"matrix shape {rows}x{cols} does not match A^{self.m} -> A^{self.n}")
        self.matrix = [
            [int(c) % self.mods_out[r] for c in row] for r, row in enumerate(matrix)
        ] if k else []
        for r, row in enumerate(self.matrix):
            for c, v in enumerate(row):
                if (v * self.mods_in[c]) % self.mods_out[r]:
                    raise NotAHomomorphism(
                        f"entry {v} does not define a map Z/{self.mods_in[c]} -> Z/{self.mods_out[r]}"
                    )

    def __repr__(self) -> str:
        return f"MatrixHom({self.alphabet!r}, m={self.m}, n={self.n}, {self.matrix})"

    def vec_in(self, x: Sequence) -> list[int]:
        A = self.alphabet
        return [v for a in x for v in A.to_vec(a)]

    def unvec(self, v: Sequence[int], count: int) -> tuple:
        k = self.alphabet.rank
        return tuple(self.alphabet.from_vec(v[i * k:(i + 1) * k]) for i in range(count))

    def __call__(self, x: Sequence) -> tuple:
        if len(x) != self.m:
            raise ValueError(f"expected {self.m} coordinates, got {len(x)}")
        if not self.alphabet.factors:
            return (self.alphabet.identity,) * self.n
        v = self.vec_in(x)
        out = [sum(a * b for a, b in zip(row, v)) for row in self.matrix]
        return self.unvec(out, self.n)

    def compose(self, inner: Hom) -> Hom:
        self._check_compose(inner)
        if not isinstance(inner, MatrixHom):
            return FunctionHom(self.alphabet, inner.m, self.n, lambda x: self(inner(x)))
        if not self.alphabet.factors:
            return MatrixHom(self.alphabet, inner.m, self.n, [])
        P = lattice.matmul(self.matrix, inner.matrix, cols=self.alphabet.rank * inner.m)
        return MatrixHom(self.alphabet, inner.m, self.n, P)

    def spread(self, size: int, positions: Sequence[Sequence[int]]) -> "MatrixHom":
        k = self.alphabet.rank
        out = lattice.zeros(k * self.n * len(positions), k * size)
        for j, idx in enumerate(positions):
            if len(idx) != self.m:
                raise ValueError("index list length does not match hom arity")
            base = j * k * self.n
            for r in range(k * self.n):
                row = self.matrix[r]
                for i, p in enumerate(idx):
                    for b in range(k):
                        out[base + r][p * k + b] += row[i * k + b]
        return MatrixHom(self.alphabet, size, self.n * len(positions), out)

    # -- lattice-backed invariants ------------------------------------

    def _augmented(self) -> list[list[int]]:
        """``[M | diag(mods_out)]``: its column lattice is the preimage of 0."""
        rows = len(self.matrix)
        return [
            self.matrix[r] + [self.mods_out[r] if j == r else 0 for j in range(rows)]
            for r in range(rows)
        ]

    @cached_property
    def _snf(self) -> lattice.SmithDecomposition:
        return lattice.smith_normal_form(self._augmented())

    def image_order(self) -> int:
        if not self.matrix:
            return 1
        coker = math.prod(self._snf.divisors)
        return math.prod(self.mods_out) // coker

    def kernel_order(self) -> int:
        return self.domain_size // self.image_order()

    def kernel_generators(self) -> list[tuple]:
        A = self.alphabet
        if not A.factors:
            return []
        width = A.rank * self.m
        if not self.matrix:
            basis = lattice.identity(width)
        else:
            basis = [v[:width] for v in lattice.kernel_basis(self._augmented())]
        gens = []
        for v in basis:
            x = self.unvec(v, self.m)
            if any(a != A.identity for a in x):
                gens.append(x)
        return gens

    def kernel_element(self) -> tuple | None:
        gens = self.kernel_generators()
        return gens[0] if gens else None

    def contains_image(self, y: Sequence) -> bool:
        return self.preimage(y) is not None

    def preimage(self, y: Sequence) -> tuple | None:
        if not self.alphabet.factors:
            return (self.alphabet.identity,) * self.m
        target = [v for a in y for v in self.alphabet.to_vec(a)]
        if not self.matrix:
            return (self.alphabet.identity,) * self.m
        sol = lattice.solve(self._augmented(), target)
        if sol is None:
            return None
        return self.unvec(sol[: self.alphabet.rank * self.m], self.m)

    def image(self) -> frozenset:
        if self.alphabet.order ** self.n > ENUMERATION_LIMIT:
            raise TooLarge("image too large to list")
        # images of single-coordinate generators span the image
        A = self.alphabet
        basis_elems = []
        for j in range(self.m):
            for b in range(A.rank):
                v = [0] * (A.rank * self.m)
                v[j * A.rank + b] = 1
                basis_elems.append(self.unvec(v, self.m))
        return self.subgroup_image(basis_elems)


class FunctionHom(FiniteHom):
    """Hom given by a Python callable on tuples (any finite group)."""

    def __init__(self, A: FiniteGroup, m: int, n: int, fn: Callable[[tuple], tuple]):
        self.alphabet = A
        self.m, self.n = int(m), int(n)
        self.fn = fn

    def __repr__(self) -> str:
        return f"FunctionHom({self.alphabet!r}, m={self.m}, n={self.n})"

    def __call__(self, x: Sequence) -> tuple:
        if len(x) != self.m:
            raise ValueError(f"expected {self.m} coordinates, got {len(x)}")
        return tuple(self.fn(tuple(x)))

    def compose(self, inner: Hom) -> Hom:
        self._check_compose(inner)
        return FunctionHom(self.alphabet, inner.m, self.n, lambda x: self(inner(x)))

    def spread(self, size: int, positions: Sequence[Sequence[int]]) -> "FunctionHom":
        positions = [tuple(p) for p in positions]
        f = self

        def fn(x):
            return tuple(itertools.chain.from_iterable(f(tuple(x[i] for i in p)) for p in positions))

        return FunctionHom(self.alphabet, size, self.n * len(positions), fn)


def table_hom(A: FiniteGroup, m: int, table: Mapping[tuple, Any] | Sequence) -> FunctionHom:
    """Hom ``A^m -> A`` from a value table.

    ``table`` is either a mapping from ``m``-tuples to elements or a flat list
    of outputs in the lexicographic order of ``A^m``.
    """
    if not isinstance(table, Mapping):
        keys = list(A.power(m))
        if len(table) != len(keys):
            raise ValueError(f"rule table needs {len(keys)} entries, got {len(table)}")
        table = dict(zip(keys, table))
    table = dict(table)
    return FunctionHom(A, m, 1, lambda x: (table[x],))


def hom_check(f: Mapping[tuple, Any] | Callable, A: FiniteGroup, m: int) -> bool:
    """Exhaustively test ``f(x y) == f(x) f(y)`` for ``f: A^m -> A``.

    Raises ``ValueError`` when a mapping ``f`` is not total on ``A^m``.
    """
    points = list(A.power(m))
    if isinstance(f, Mapping):
        missing = [x for x in points if x not in f]
        if missing:
            raise ValueError(f"table is not total on A^{m}; missing {missing[0]}")
        values = {x: f[x] for x in points}
    else:
        values = {x: f(x) for x in points}
    return all(
        A.mul(values[x], values[y]) == values[A.pmul(x, y)] for x in points for y in points
    )


def is_hom(f: FiniteHom) -> bool:
    """Exhaustive homomorphism law for a :class:`FiniteHom` between powers."""
    A = f.alphabet
    points = list(f._enumerate())
    values = {x: f(x) for x in points}
    return all(A.pmul(values[x], values[y]) == values[A.pmul(x, y)] for x in points for y in points)


class SymbolicHom(Hom):
    """``(B, h)``: ``B`` acts on the connected part, ``h`` on components."""

    def __init__(self, A: SymbolicAlphabet, m: int, n: int, B: Sequence[Sequence[int]], h: FiniteHom | None = None):
        self.alphabet = A
        self.m, self.n = int(m), int(n)
        g = A.rank
        self.B = [[int(v) for v in row] for row in B]
        if len(self.B) != g * self.n or any(len(row) != g * self.m for row in self.B):
            raise ValueError(f"connected-part matrix must be {g * self.n}x{g * self.m}")
        if h is None:
            if A.components.factors:
                raise ValueError("a component map is required when the component group is nontrivial")
            h = MatrixHom(A.components, self.m, self.n, [])
        if h.alphabet != A.components or (h.m, h.n) != (self.m, self.n):
            raise ValueError("component map does not match the alphabet")
        self.h = h

    def __repr__(self) -> str:
        return f"SymbolicHom({self.alphabet}, m={self.m}, n={self.n}, B={self.B})"

    def compose(self, inner: Hom) -> "SymbolicHom":
        self._check_compose(inner)
        g = self.alphabet.rank
        B = lattice.matmul(self.B, inner.B, cols=g * inner.m)
        return SymbolicHom(self.alphabet, inner.m, self.n, B, self.h.compose(inner.h))

    def spread(self, size: int, positions: Sequence[Sequence[int]]) -> "SymbolicHom":
        g = self.alphabet.rank
        out = lattice.zeros(g * self.n * len(positions), g * size)
        for j, idx in enumerate(positions):
            base = j * g * self.n
            for r in range(g * self.n):
                for i, p in enumerate(idx):
                    for b in range(g):
                        out[base + r][p * g + b] += self.B[r][i * g + b]
        return SymbolicHom(self.alphabet, size, self.n * len(positions), out, self.h.spread(size, positions))

    def rank(self) -> int:
        return lattice.rank(self.B) if self.B else 0

    def kernel_invariants(self) -> tuple[int, int]:
        """Dimension and component count of the kernel (connected and component parts)."""
        dim, comps = lattice.kernel_invariants(self.B, self.alphabet.torsion, cols=self.alphabet.rank * self.m)
        return dim, comps * self.h.kernel_order()


def pi0_hom(f: Hom) -> FiniteHom:
    """Induced map on component groups."""
    if isinstance(f, SymbolicHom):
        return f.h
    return f


@dataclass(frozen=True)
class HomInvariants:
    image_dim: int
    image_components: int
    kernel_dim: int
    kernel_components: int
    surjective: bool

    @property
    def injective(self) -> bool:
        return self.kernel_dim == 0 and self.kernel_components == 1


def image_and_kernel(f: Hom) -> HomInvariants:
    if isinstance(f, SymbolicHom):
        g = f.alphabet.rank
        r = f.rank()
        kdim, kcomp = f.kernel_invariants()
        img = f.h.image_order()
        surjective = r == g * f.n and img == f.alphabet.components.order ** f.n
        return HomInvariants(r, img, kdim, kcomp, surjective)
    img = f.image_order()
    return HomInvariants(0, img, 0, f.domain_size // img, img == f.alphabet.order ** f.n)


def rule_from_matrix(A, m: int, matrix: Sequence[Sequence[int]], component_matrix: Sequence[Sequence[int]] | None = None) -> Hom:
    """Local rule ``A^m -> A`` from integer data."""
    if isinstance(A, SymbolicAlphabet):
        h = None
        if A.components.factors:
            if component_matrix is None:
                raise ValueError("component_matrix is required for a nontrivial component group")
            h = MatrixHom(A.components, m, 1, component_matrix)
        return SymbolicHom(A, m, 1, matrix, h)
    if isinstance(A, AbelianGroup):
        return MatrixHom(A, m, 1, matrix)
    raise TypeError("integer rule matrices need an abelian or symbolic alphabet")


def product_group(groups: Sequence[FiniteGroup]) -> FiniteGroup:
    """Direct product of abelian groups as a single :class:`AbelianGroup`."""
    return AbelianGroup(reduce(lambda acc, G: acc + list(G.factors), groups, []))
