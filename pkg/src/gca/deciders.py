"""Deciders for pre-injectivity, surjectivity, post-surjectivity and the two
weak pre-injectivity notions.

Each decider returns a :class:`PropertyVerdict`.  ``certified-true`` and
``certified-false`` are proofs (the latter always with a witness that can be
replayed); ``unknown-after-bound`` means the search ran out of budget.
Exact procedures exist for the universe ``Z`` with finite alphabets and for
finite universes; elsewhere the deciders are semi-decisions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Iterable, Sequence

from . import lattice
from .alphabet import FiniteHom, SymbolicAlphabet, SymbolicHom, TooLarge
from .automaton import CellularAutomaton, find_inverse, induced_component_ca
from .groups import FiniteUniverse, Lattice, ball
from . import shifts

TRUE = "certified-true"
FALSE = "certified-false"
UNKNOWN = "unknown-after-bound"


@dataclass(frozen=True)
class PropertyVerdict:
    name: str
    status: str
    witness: Any = None
    certificate: str | None = None
    bound: Any = None
    chain: "PostSurjChain | None" = None

    @property
    def true(self) -> bool:
        return self.status == TRUE

    @property
    def false(self) -> bool:
        return self.status == FALSE


@dataclass
class PostSurjChain:
    """The increasing subgroups ``Z_n`` reached by corrections inside ``ball(n)``.

    For finite alphabets ``Z_n`` is stored as a frozenset.  For symbolic
    alphabets it is the pair (dimension of the connected part, component
    subgroup), the connected part being the image of a connected group.
    """

    radii: list = field(default_factory=list)
    Z: list = field(default_factory=list)
    full_at: int | None = None

    @property
    def deviations(self) -> list:
        return [z for z in self.Z]


def _is_line(ca: CellularAutomaton) -> bool:
    return isinstance(ca.universe, Lattice) and ca.universe.dim == 1


def _symbolic(ca: CellularAutomaton) -> bool:
    return isinstance(ca.alphabet, SymbolicAlphabet)


def restriction_hom(ca: CellularAutomaton, omega: Iterable):
    """``c -> tau(c_e)`` restricted to the sites it can change; see
    :meth:`CellularAutomaton.restriction_hom`."""
    ca.require_group()
    return ca.restriction_hom(list(omega))


def _omegas(ca: CellularAutomaton, omegas, radius_max: int) -> list[list]:
    if omegas is not None:
        return [ca.universe.sorted(set(o)) for o in omegas]
    return [list(ball(ca.universe, r)) for r in range(radius_max + 1)]


def _global_hom(ca: CellularAutomaton):
    """For a finite universe: the whole map ``A^G -> A^G`` as one hom."""
    G = ca.universe.sorted(ca.universe.group.elements)
    W, sites = ca.window_hom(G)
    assert list(sites) == list(G)
    return W, G


# ---------------------------------------------------------------------------
# pre-injectivity


def decide_preinjective(ca: CellularAutomaton, radius_max: int = 4) -> PropertyVerdict:
    ca.require_group()
    name = "preinjective"
    if _symbolic(ca):
        return _symbolic_preinjective(ca, radius_max)
    if _is_line(ca):
        patch = shifts.finite_kernel_word(ca)
        if patch is None:
            return PropertyVerdict(name, TRUE, certificate="de Bruijn kernel search")
        return PropertyVerdict(name, FALSE, witness={"kernel_pattern": patch}, certificate="de Bruijn kernel search")
    if isinstance(ca.universe, FiniteUniverse):
        W, G = _global_hom(ca)
        x = W.kernel_element()
        if x is None:
            return PropertyVerdict(name, TRUE, certificate="finite universe, injective")
        return PropertyVerdict(name, FALSE, witness={"kernel_pattern": dict(zip(G, x))})
    searched = -1
    for r in range(radius_max + 1):
        omega = list(ball(ca.universe, r))
        R, _ = ca.restriction_hom(omega)
        try:
            x = R.kernel_element()
        except TooLarge:
            break
        searched = r
        if x is not None:
            pattern = {g: a for g, a in zip(omega, x) if a != ca.alphabet.identity}
            return PropertyVerdict(name, FALSE, witness={"kernel_pattern": pattern}, bound=r)
    inv = find_inverse(ca, radius_max)
    if inv.inverse is not None:
        return PropertyVerdict(name, TRUE, certificate="invertible", witness={"inverse_radius": inv.radius})
    return PropertyVerdict(name, UNKNOWN, bound=searched)


def _single_site_invertible(ca: CellularAutomaton) -> bool:
    n = ca.normalized()
    if len(n.memory) != 1:
        return False
    rule = n.rule
    return abs(lattice.determinant(rule.B)) == 1 and rule.h.is_injective()


def _symbolic_preinjective(ca: CellularAutomaton, radius_max: int) -> PropertyVerdict:
    name = "preinjective"
    if _is_line(ca):
        v = decide_preinjective(induced_component_ca(ca))
        if v.false:
            return PropertyVerdict(name, FALSE, witness={"component_kernel_pattern": v.witness["kernel_pattern"]},
                                   certificate="component automaton")
    for r in range(radius_max + 1):
        omega = list(ball(ca.universe, r))
        R, _ = ca.restriction_hom(omega)
        dim, comps = R.kernel_invariants()
        if dim > 0 or comps > 1:
            return PropertyVerdict(name, FALSE, bound=r, certificate="restriction kernel",
                                   witness={"omega": omega, "kernel_dim": dim, "kernel_components": comps})
    if _single_site_invertible(ca):
        return PropertyVerdict(name, TRUE, certificate="single-site invertible")
    return PropertyVerdict(name, UNKNOWN, bound=radius_max)


# ---------------------------------------------------------------------------
# surjectivity


def _orphan_pattern(W: FiniteHom, sites: Sequence) -> dict | None:
    """A pattern on ``sites`` outside the image of ``W``; ``None`` if ``W`` is onto."""
    if W.is_surjective():
        return None
    A = W.alphabet
    e = A.identity
    # the image is a subgroup; some generator of A^sites escapes it
    if hasattr(A, "factors"):
        gens = []
        for j in range(len(sites)):
            for b in range(A.rank):
                v = [0] * A.rank
                v[b] = 1
                gens.append(tuple(A.from_vec(v) if i == j else e for i in range(len(sites))))
    else:
        gens = [tuple(a if i == j else e for i in range(len(sites))) for j in range(len(sites)) for a in A.elements]
    for y in gens:
        if not W.contains_image(y):
            return dict(zip(sites, y))
    raise AssertionError("proper image contains every generator")


def decide_surjective(ca: CellularAutomaton, bound: int = 4) -> PropertyVerdict:
    name = "surjective"
    if _symbolic(ca):
        return _symbolic_surjective(ca, bound)
    if _is_line(ca):
        word = shifts.orphan_word(ca)
        if word is None:
            return PropertyVerdict(name, TRUE, certificate="image automaton universal")
        return PropertyVerdict(name, FALSE, witness={"orphan": dict(enumerate(word))}, certificate="image automaton")
    if isinstance(ca.universe, FiniteUniverse):
        W, G = _global_hom(ca)
        pat = _orphan_pattern(W, G)
        if pat is None:
            return PropertyVerdict(name, TRUE, certificate="finite universe, onto")
        return PropertyVerdict(name, FALSE, witness={"orphan": pat})
    searched = -1
    for r in range(bound + 1):
        E = list(ball(ca.universe, r))
        W, _ = ca.window_hom(E)
        try:
            pat = _orphan_pattern(W, E)
        except TooLarge:
            break
        searched = r
        if pat is not None:
            return PropertyVerdict(name, FALSE, witness={"orphan": pat}, bound=r)
    if ca.is_group:
        pre = decide_preinjective(ca, bound)
        if pre.true and ca.universe.amenable:
            return PropertyVerdict(name, TRUE, certificate="pre-injective on an amenable universe", bound=searched)
        if pre.certificate == "invertible":
            return PropertyVerdict(name, TRUE, certificate="invertible", bound=searched)
    return PropertyVerdict(name, UNKNOWN, bound=searched)


def _window_report(ca: CellularAutomaton, bound: int) -> tuple[list, PropertyVerdict | None]:
    g = ca.alphabet.rank
    report = []
    for r in range(bound + 1):
        E = list(ball(ca.universe, r))
        W, _ = ca.window_hom(E)
        rank = W.rank()
        report.append({"radius": r, "window": len(E), "dim": rank, "full_dim": g * len(E)})
        if rank < g * len(E):
            return report, PropertyVerdict("surjective", FALSE, bound=r, certificate="window dimension drop",
                                           witness={"window": E, "dim": rank, "full_dim": g * len(E)})
        if not W.h.is_surjective():
            pat = _orphan_pattern(W.h, E)
            return report, PropertyVerdict("surjective", FALSE, bound=r, certificate="component window",
                                           witness={"window": E, "component_orphan": pat})
    return report, None


def _symbolic_surjective(ca: CellularAutomaton, bound: int) -> PropertyVerdict:
    name = "surjective"
    ca.require_group()
    report, refuted = _window_report(ca, bound)
    if refuted is not None:
        return refuted
    comp = induced_component_ca(ca)
    comp_v = decide_surjective(comp, bound)
    if comp_v.false:
        return PropertyVerdict(name, FALSE, witness={"component_orphan": comp_v.witness["orphan"]},
                               certificate="component automaton")
    n = ca.normalized()
    B = n.rule.B
    if len(n.memory) == 1 and lattice.rank(B) == ca.alphabet.rank and comp_v.true:
        return PropertyVerdict(name, TRUE, certificate="single-site surjective", witness={"dims": report})
    if _is_line(ca) and ca.alphabet.rank == 1 and any(any(r) for r in B) and comp_v.true:
        # solve c one site at a time using divisibility by the extreme coefficients
        return PropertyVerdict(name, TRUE, certificate="one-dimensional divisibility", witness={"dims": report})
    return PropertyVerdict(name, UNKNOWN, bound=bound, witness={"dims": report})


# ---------------------------------------------------------------------------
# post-surjectivity


def correction_chain(ca: CellularAutomaton, n_max: int) -> PostSurjChain:
    """``Z_n = {tau(c)(1) : c supported on ball(n), tau(c) = e off 1}``."""
    ca.require_group()
    u = ca.universe
    one = u.identity()
    chain = PostSurjChain()
    for n in range(n_max + 1):
        E = list(ball(u, n))
        phi, sites = ca.restriction_hom(E)
        chain.radii.append(n)
        if _symbolic(ca):
            Z, full = _symbolic_Z(ca, phi, sites, one)
        else:
            Z = _finite_Z(ca, phi, sites, one)
            full = len(Z) == ca.alphabet.order
        chain.Z.append(Z)
        if full:
            chain.full_at = n
            break
    return chain


def _finite_Z(ca, phi, sites, one) -> frozenset:
    A = ca.alphabet
    if one not in sites:
        return frozenset([A.identity])
    i = sites.index(one)
    others = [j for j in range(len(sites)) if j != i]
    q = phi.select(others)
    p = phi.select([i])
    gens = q.kernel_generators()
    return frozenset(y[0] for y in p.subgroup_image(gens))


def _symbolic_Z(ca, phi: SymbolicHom, sites, one):
    A = ca.alphabet
    g = A.rank
    if one not in sites:
        return (0, frozenset([A.components.identity])), False
    i = sites.index(one)
    Bq = [row for k, row in enumerate(phi.B) if k // g != i]
    Bp = [row for k, row in enumerate(phi.B) if k // g == i]
    cols = g * phi.m
    K = lattice.kernel_basis(Bq, cols=cols) if Bq else lattice.identity(cols)
    dim = lattice.rank(lattice.matmul(Bp, lattice.transpose(K, rows=cols), cols=len(K))) if K else 0
    others = [j for j in range(len(sites)) if j != i]
    hq = phi.h.select(others)
    hp = phi.h.select([i])
    pi_part = frozenset(y[0] for y in hp.subgroup_image(hq.kernel_generators()))
    return (dim, pi_part), dim == g and len(pi_part) == A.components.order


def certify_post_surjective(ca: CellularAutomaton, n_max: int = 4) -> PropertyVerdict:
    name = "post_surjective"
    ca.require_group()
    if not _symbolic(ca) and _is_line(ca):
        corr = shifts.single_site_corrections(ca)
        missing = [a for a, c in corr.items() if c is None]
        if missing:
            return PropertyVerdict(name, FALSE, certificate="correction automaton",
                                   witness={"deviation": missing[0]})
        need = max((abs(g) for c in corr.values() for g in c), default=0)
        chain = correction_chain(ca, max(need, 0))
        if chain.full_at is None:
            raise AssertionError("corrections found but the chain did not fill")
        return PropertyVerdict(name, TRUE, certificate="correction radius", bound=chain.full_at,
                               witness={"correction_set": list(ball(ca.universe, chain.full_at))}, chain=chain)
    chain = correction_chain(ca, n_max)
    if chain.full_at is not None:
        return PropertyVerdict(name, TRUE, certificate="correction radius", bound=chain.full_at,
                               witness={"correction_set": list(ball(ca.universe, chain.full_at))}, chain=chain)
    if isinstance(ca.universe, FiniteUniverse) and not _symbolic(ca):
        surj = decide_surjective(ca)
        return PropertyVerdict(name, surj.status, witness=surj.witness, certificate="finite universe", chain=chain)
    if _symbolic(ca) and _is_line(ca):
        comp = certify_post_surjective(induced_component_ca(ca), n_max)
        if comp.false:
            return PropertyVerdict(name, FALSE, certificate="component automaton", witness=comp.witness, chain=chain)
    return PropertyVerdict(name, UNKNOWN, bound=n_max, chain=chain)


# ---------------------------------------------------------------------------
# weak pre-injectivity


def _exact_line_window(ca: CellularAutomaton) -> list:
    """On ``Z`` a rank drop, if any, shows up on one interval of this length."""
    g = ca.alphabet.rank
    span = max(ca.memory) - min(ca.memory)
    return list(range((g - 1) * span + 1))


def star_preinjective(ca: CellularAutomaton, omegas=None, radius_max: int = 4) -> PropertyVerdict:
    name = "star"
    ca.require_group()
    if _symbolic(ca):
        g = ca.alphabet.rank
        for omega in _omegas(ca, omegas, radius_max):
            R, _ = ca.restriction_hom(omega)
            rank = R.rank()
            if rank < g * len(omega):
                return PropertyVerdict(name, FALSE, certificate="dimension drop",
                                       witness={"omega": omega, "dim": rank, "full_dim": g * len(omega)})
            x = R.h.kernel_element()
            if x is not None:
                return PropertyVerdict(name, FALSE, certificate="removable components",
                                       witness={"omega": omega, "H": "A^omega minus the components of e",
                                                "component_kernel": dict(zip(omega, x))})
        pre = decide_preinjective(ca, radius_max)
        if pre.true:
            return PropertyVerdict(name, TRUE, certificate="pre-injective")
        return PropertyVerdict(name, UNKNOWN, bound=radius_max)
    if _is_line(ca):
        patch = shifts.finite_kernel_word(ca)
        if patch is None:
            return PropertyVerdict(name, TRUE, certificate="pre-injective")
        omega = sorted(g for g, a in patch.items() if a != ca.alphabet.identity)
        return _star_witness(ca, omega, {g: patch[g] for g in omega})
    for omega in _omegas(ca, omegas, radius_max):
        R, _ = ca.restriction_hom(omega)
        try:
            x = R.kernel_element()
        except TooLarge:
            break
        if x is not None:
            return _star_witness(ca, omega, dict(zip(omega, x)))
    pre = decide_preinjective(ca, radius_max)
    if pre.true:
        return PropertyVerdict(name, TRUE, certificate="pre-injective")
    if pre.false:
        pattern = pre.witness["kernel_pattern"]
        omega = ca.universe.sorted(pattern)
        return _star_witness(ca, omega, pattern)
    return PropertyVerdict(name, UNKNOWN, bound=radius_max)


def _star_witness(ca, omega, kernel_pattern) -> PropertyVerdict:
    """``H = A^omega minus {e}`` has the same image: ``e`` and ``k`` map alike."""
    return PropertyVerdict("star", FALSE, certificate="restriction not injective",
                           witness={"omega": list(omega), "H": "A^omega minus {e}", "kernel_pattern": kernel_pattern})


def starstar_preinjective(ca: CellularAutomaton, omegas=None, radius_max: int = 4) -> PropertyVerdict:
    name = "starstar"
    ca.require_group()
    if not _symbolic(ca):
        return PropertyVerdict(name, TRUE, certificate="finite alphabet, both dimensions 0")
    g = ca.alphabet.rank
    exact = omegas is None and _is_line(ca)
    windows = _omegas(ca, omegas, radius_max)
    if exact:
        windows.append(_exact_line_window(ca))
    for omega in windows:
        R, _ = ca.restriction_hom(omega)
        rank = R.rank()
        if rank < g * len(omega):
            return PropertyVerdict(name, FALSE, certificate="dimension drop",
                                   witness={"omega": omega, "dim": rank, "full_dim": g * len(omega)})
    if exact:
        return PropertyVerdict(name, TRUE, certificate="adjugate window", bound=len(windows[-1]))
    return PropertyVerdict(name, TRUE, certificate="window list", bound=[len(o) for o in windows])


def check_all(ca: CellularAutomaton, properties: Sequence[str], radius_max: int = 4) -> list[PropertyVerdict]:
    table = {
        "preinjective": lambda: decide_preinjective(ca, radius_max),
        "surjective": lambda: decide_surjective(ca, radius_max),
        "post_surjective": lambda: certify_post_surjective(ca, radius_max),
        "star": lambda: star_preinjective(ca, radius_max=radius_max),
        "starstar": lambda: starstar_preinjective(ca, radius_max=radius_max),
    }
    out = []
    for p in properties:
        if p not in table:
            raise ValueError(f"unknown property {p!r}")
        out.append(table[p]())
    return out
