"""Cellular automata with group alphabets.

``tau(c)(g) = rule(c(g m_1), ..., c(g m_k))`` for the memory list
``(m_1, ..., m_k)``.  The local rule is a :class:`~gca.alphabet.Hom`
``A^k -> A``; finite rules given by an arbitrary table are accepted too
(``is_group`` tells the two apart).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Any, Iterable, Mapping, Sequence

from . import lattice
from .alphabet import (
    AbelianGroup,
    FiniteGroup,
    FiniteHom,
    FunctionHom,
    Hom,
    MatrixHom,
    SymbolicAlphabet,
    SymbolicHom,
    TooLarge,
    embedding,
    is_hom,
    pi0,
    pi0_hom,
    projection,
)
from .groups import GroupUniverse, Lattice, ball


class NotGroupCA(ValueError):
    """The local rule is not a group homomorphism."""


class DomainTooSmall(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class CellularAutomaton:
    universe: GroupUniverse
    alphabet: Any
    memory: tuple
    rule: Hom

    def __post_init__(self):
        memory = tuple(self.universe.check(g) for g in self.memory)
        if len(set(memory)) != len(memory):
            raise ValueError("memory elements must be distinct")
        object.__setattr__(self, "memory", memory)
        if self.rule.alphabet != self.alphabet:
            raise ValueError("rule alphabet differs from the automaton alphabet")
        if (self.rule.m, self.rule.n) != (len(memory), 1):
            raise ValueError(f"rule must map A^{len(memory)} -> A")

    def __repr__(self) -> str:
        return f"CellularAutomaton({self.universe}, {self.alphabet}, memory={list(self.memory)})"

    @property
    def is_finite(self) -> bool:
        return isinstance(self.alphabet, FiniteGroup)

    @property
    def is_group(self) -> bool:
        if isinstance(self.rule, FunctionHom):
            return _cached_is_hom(self.rule)
        return True

    def require_group(self) -> None:
        if not self.is_group:
            raise NotGroupCA("local rule is not a homomorphism")

    def local(self, values: Sequence) -> Any:
        return self.rule(tuple(values))[0]

    # -- windows --------------------------------------------------------

    def neighbourhood(self, E: Iterable) -> list:
        """``E M`` in canonical order."""
        return self.universe.set_product(E, self.memory)

    def window_hom(self, E: Sequence) -> tuple[Hom, list]:
        """Hom ``A^{E M} -> A^E`` computing ``tau`` on ``E``; also returns the sites ``E M``."""
        u = self.universe
        E = list(E)
        sites = self.neighbourhood(E)
        where = {g: i for i, g in enumerate(sites)}
        positions = [[where[u._mul(g, m)] for m in self.memory] for g in E]
        return self.rule.spread(len(sites), positions), sites

    def affected_sites(self, omega: Iterable) -> list:
        """Sites whose output can depend on ``omega``: ``omega M^-1``."""
        u = self.universe
        return u.set_product(omega, [u._inv(m) for m in self.memory])

    def restriction_hom(self, omega: Sequence) -> tuple[Hom, list]:
        """``c -> tau(c_e)`` on ``omega M^-1`` for ``c`` supported on ``omega``.

        Outside ``omega M^-1`` the image of an ``e``-extended pattern is ``e``,
        so this hom carries all of ``tau((A^omega)_e)``.
        """
        omega = self.universe.sorted(set(omega))
        out_sites = self.affected_sites(omega)
        W, sites = self.window_hom(out_sites)
        where = {g: i for i, g in enumerate(sites)}
        inject = embedding(self.alphabet, len(omega), len(sites), [where[g] for g in omega])
        return W.compose(inject), out_sites

    # -- normal form ----------------------------------------------------

    def relevant_positions(self) -> list[int]:
        """Memory positions the rule actually depends on."""
        rule = self.rule
        k = len(self.memory)
        keep = []
        for i in range(k):
            inj = embedding(self.alphabet, 1, k, [i])
            single = rule.compose(inj)
            if not _is_trivial(single):
                keep.append(i)
        return keep

    def normalized(self) -> "CellularAutomaton":
        """Same map with memory pruned to used elements in canonical order."""
        keep = self.relevant_positions()
        u = self.universe
        if not keep:
            memory = (u.identity(),)
            rule = _zero_hom(self.alphabet, 1)
            return CellularAutomaton(u, self.alphabet, memory, rule)
        order = sorted(keep, key=lambda i: u.sort_key(self.memory[i]))
        memory = tuple(self.memory[i] for i in order)
        inj = embedding(self.alphabet, len(order), len(self.memory), order)
        return CellularAutomaton(u, self.alphabet, memory, self.rule.compose(inj))

    def same_as(self, other: "CellularAutomaton") -> bool:
        """Equality as maps ``A^G -> A^G``."""
        if self.universe != other.universe or self.alphabet != other.alphabet:
            return False
        a, b = self.normalized(), other.normalized()
        if a.memory != b.memory:
            return False
        return _same_hom(a.rule, b.rule)


def _cached_is_hom(f: FunctionHom) -> bool:
    cached = getattr(f, "_is_hom", None)
    if cached is None:
        cached = is_hom(f)
        f._is_hom = cached
    return cached


def _zero_hom(A, m: int) -> Hom:
    if isinstance(A, SymbolicAlphabet):
        return SymbolicHom(A, m, 1, lattice.zeros(A.rank, A.rank * m), _zero_hom(A.components, m))
    if isinstance(A, AbelianGroup):
        return MatrixHom(A, m, 1, lattice.zeros(A.rank, A.rank * m))
    e = A.identity
    return FunctionHom(A, m, 1, lambda x: (e,))


def _is_trivial(f: Hom) -> bool:
    if isinstance(f, SymbolicHom):
        return not any(any(row) for row in f.B) and _is_trivial(f.h)
    if isinstance(f, MatrixHom):
        return not any(any(row) for row in f.matrix)
    e = (f.alphabet.identity,) * f.n
    return all(f(x) == e for x in f._enumerate())


def _same_hom(f: Hom, g: Hom) -> bool:
    if isinstance(f, SymbolicHom) and isinstance(g, SymbolicHom):
        return f.B == g.B and _same_hom(f.h, g.h)
    if isinstance(f, MatrixHom) and isinstance(g, MatrixHom):
        return f.matrix == g.matrix
    return f.equals(g)


# ---------------------------------------------------------------------------
# constructors


def identity_ca(universe: GroupUniverse, alphabet) -> CellularAutomaton:
    return CellularAutomaton(universe, alphabet, (universe.identity(),), projection(alphabet, 1, [0]))


def linear_ca(universe: GroupUniverse, alphabet, memory: Sequence, matrix, component_matrix=None) -> CellularAutomaton:
    from .alphabet import rule_from_matrix

    memory = [universe.element(m) if hasattr(universe, "element") else m for m in memory]
    return CellularAutomaton(universe, alphabet, tuple(memory), rule_from_matrix(alphabet, len(memory), matrix, component_matrix))


def table_ca(universe: GroupUniverse, alphabet: FiniteGroup, memory: Sequence, table) -> CellularAutomaton:
    from .alphabet import table_hom

    memory = [universe.element(m) if hasattr(universe, "element") else m for m in memory]
    return CellularAutomaton(universe, alphabet, tuple(memory), table_hom(alphabet, len(memory), table))


# ---------------------------------------------------------------------------
# evaluation


def apply_patch(ca: CellularAutomaton, c: Mapping, E: Iterable | None = None) -> dict:
    """Evaluate ``tau`` on the sites of ``E`` from a finite patch ``c``.

    Without ``E`` the largest possible domain ``{g : g M within dom(c)}`` is used.
    """
    if not ca.is_finite:
        raise TypeError("symbolic alphabets have no points; use restriction_hom or window_hom")
    u = ca.universe
    if E is None:
        E = [g for g in u.sorted(c) if all(u._mul(g, m) in c for m in ca.memory)]
    out = {}
    for g in E:
        try:
            vals = [c[u._mul(g, m)] for m in ca.memory]
        except KeyError as exc:
            raise DomainTooSmall(f"patch does not contain {exc.args[0]!r} needed at {g!r}") from None
        out[g] = ca.local(vals)
    return out


def compose(outer: CellularAutomaton, inner: CellularAutomaton) -> CellularAutomaton:
    """``outer o inner`` with memory ``M_outer M_inner``."""
    if outer.alphabet != inner.alphabet:
        raise ValueError("alphabet mismatch")
    if outer.universe != inner.universe:
        raise ValueError("universe mismatch")
    u = outer.universe
    memory = u.set_product(outer.memory, inner.memory)
    where = {g: i for i, g in enumerate(memory)}
    positions = [[where[u._mul(a, b)] for b in inner.memory] for a in outer.memory]
    spread = inner.rule.spread(len(memory), positions)
    return CellularAutomaton(u, outer.alphabet, tuple(memory), outer.rule.compose(spread))


def induced_component_ca(ca: CellularAutomaton) -> CellularAutomaton:
    """The automaton induced on connected components."""
    ca.require_group()
    return CellularAutomaton(ca.universe, pi0(ca.alphabet), ca.memory, pi0_hom(ca.rule))


@dataclass(frozen=True)
class PeriodicConfig:
    """Configuration on ``Z^d`` periodic under ``period`` along each axis."""

    universe: Lattice
    period: tuple
    values: dict = field(hash=False)

    def __post_init__(self):
        period = tuple(int(p) for p in (self.period if isinstance(self.period, (tuple, list)) else (self.period,)))
        if len(period) != self.universe.dim or any(p < 1 for p in period):
            raise ValueError("bad period")
        object.__setattr__(self, "period", period)
        for g in self.domain():
            if g not in self.values:
                raise ValueError(f"fundamental domain value missing at {g!r}")

    def domain(self) -> list:
        return [self.universe.from_vec(v) for v in itertools.product(*(range(p) for p in self.period))]

    def __getitem__(self, g):
        v = self.universe.vec(g)
        return self.values[self.universe.from_vec([x % p for x, p in zip(v, self.period)])]

    def shift(self, h) -> "PeriodicConfig":
        """``(h c)(g) = c(h^-1 g)``."""
        u = self.universe
        hi = u.inv(h)
        return PeriodicConfig(u, self.period, {g: self[u.mul(hi, g)] for g in self.domain()})

    @classmethod
    def from_word(cls, word: Sequence) -> "PeriodicConfig":
        return cls(Lattice(1), (len(word),), {i: a for i, a in enumerate(word)})


def apply_periodic(ca: CellularAutomaton, c: PeriodicConfig) -> PeriodicConfig:
    if not ca.is_finite:
        raise TypeError("symbolic alphabets have no points")
    u = ca.universe
    if u != c.universe:
        raise ValueError("configuration lives on another universe")
    return PeriodicConfig(u, c.period, {g: ca.local([c[u._mul(g, m)] for m in ca.memory]) for g in c.domain()})


# ---------------------------------------------------------------------------
# inverse search


@dataclass(frozen=True)
class InverseSearch:
    inverse: CellularAutomaton | None
    radius: int | None
    searched: int
    witness: Any = None


def find_inverse(ca: CellularAutomaton, radius_max: int) -> InverseSearch:
    """Look for ``sigma`` with ``sigma o tau = tau o sigma = id`` and memory in a ball.

    Radius ``rho`` works exactly when every pattern in the kernel of the
    window map on ``ball(rho)`` vanishes at the identity and the window map
    is onto; the inverse rule is then read off preimages.
    """
    if not ca.is_finite:
        raise TypeError("inverse search needs a finite alphabet")
    ca.require_group()
    u = ca.universe
    one = u.identity()
    for rho in range(radius_max + 1):
        R = list(ball(u, rho))
        W, sites = ca.window_hom(R)
        if one not in sites:
            continue
        centre = projection(ca.alphabet, len(sites), [sites.index(one)])
        try:
            if not W.is_surjective():
                break
            if any(centre(x) != (ca.alphabet.identity,) for x in W.kernel_generators()):
                continue
            rule = _inverse_rule(W, centre, ca.alphabet, len(R))
        except TooLarge:
            break
        sigma = CellularAutomaton(u, ca.alphabet, tuple(R), rule)
        ident = identity_ca(u, ca.alphabet)
        if compose(sigma, ca).same_as(ident) and compose(ca, sigma).same_as(ident):
            return InverseSearch(sigma.normalized(), rho, radius_max)
    witness = None
    if isinstance(u, Lattice) and u.dim == 1:
        from .shifts import periodic_kernel_config

        witness = periodic_kernel_config(ca)
    return InverseSearch(None, None, radius_max, witness)


def _inverse_rule(W: FiniteHom, centre: FiniteHom, A: FiniteGroup, size: int) -> FiniteHom:
    if isinstance(W, MatrixHom):
        k = A.rank
        cols = []
        for j in range(size):
            for b in range(k):
                v = [0] * (k * size)
                v[j * k + b] = 1
                x = W.preimage(W.unvec(v, size))
                cols.append(list(A.to_vec(centre(x)[0])))
        matrix = [[cols[c][r] for c in range(len(cols))] for r in range(k)]
        return MatrixHom(A, size, 1, matrix)
    table = {}
    for x in W._enumerate():
        table.setdefault(W(x), centre(x))
    return FunctionHom(A, size, 1, lambda y: table[tuple(y)])
