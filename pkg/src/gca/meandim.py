"""Window dimensions and entropies of cellular-automaton images.

For a window ``F`` the image window ``Gamma_F`` is the set of restrictions
``tau(c)|_F``.  It equals the image of the window hom ``A^{FM} -> A^F``, so
its dimension (symbolic alphabets) and cardinality (finite alphabets) are
computed exactly.  Finite alphabets have dimension 0 everywhere; their
entropy variant ``log |Gamma_F| / |F|`` is reported separately.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .alphabet import FiniteGroup, SymbolicAlphabet, TooLarge
from .automaton import CellularAutomaton
from .groups import Lattice, NotAmenable, folner_box


class RegionTooSmall(ValueError):
    pass


@dataclass(frozen=True)
class WindowValue:
    """Exact data of one image window.

    ``dim`` is the dimension of ``Gamma_F``.  For finite alphabets ``count``
    is ``|Gamma_F|`` and ``dim`` is 0.
    """

    size: int
    dim: int
    count: int | None = None
    exact: bool = True
    component_count: int | None = None

    @property
    def log_count(self) -> float | None:
        return None if self.count is None else math.log(self.count)

    def entropy_is_log(self, base: int) -> bool:
        """``log |Gamma_F| / |F| == log base`` exactly."""
        return self.count is not None and self.count == base ** self.size


def window_dim(ca: CellularAutomaton, F: Iterable) -> WindowValue:
    F = ca.universe.sorted(set(F))
    if not F:
        raise ValueError("empty window")
    if isinstance(ca.alphabet, SymbolicAlphabet):
        ca.require_group()
        W, _ = ca.window_hom(F)
        return WindowValue(len(F), W.rank(), component_count=W.h.image_order())
    if not isinstance(ca.alphabet, FiniteGroup):
        raise TypeError("unsupported alphabet")
    if ca.is_group:
        W, _ = ca.window_hom(F)
        return WindowValue(len(F), 0, W.image_order())
    u = ca.universe
    if isinstance(u, Lattice) and u.dim == 1 and F == list(range(F[0], F[0] + len(F))):
        from .shifts import image_automaton

        return WindowValue(len(F), 0, image_automaton(ca).count_words(len(F)))
    W, _ = ca.window_hom(F)
    try:
        return WindowValue(len(F), 0, len(W.image()))
    except TooLarge:
        raise TypeError("window too large for a non-group rule off the line") from None


@dataclass
class MdimEstimate:
    """Ratios along the first Følner boxes.

    ``ratios`` are ``dim Gamma_F / |F|`` and ``entropy`` the per-site log
    counts (finite alphabets only).  ``last`` is the value on the largest box
    and ``max`` the largest ratio seen; no limit is extrapolated.
    """

    sizes: list = field(default_factory=list)
    ratios: list = field(default_factory=list)
    entropy: list = field(default_factory=list)
    counts: list = field(default_factory=list)

    @property
    def last(self) -> Fraction | None:
        return self.ratios[-1] if self.ratios else None

    @property
    def max(self) -> Fraction | None:
        return max(self.ratios) if self.ratios else None

    @property
    def entropy_last(self) -> float | None:
        return self.entropy[-1] if self.entropy else None


def mdim_estimate(ca: CellularAutomaton, k: int) -> MdimEstimate:
    est = MdimEstimate()
    for i in range(k):
        F = folner_box(ca.universe, i).elements
        w = window_dim(ca, F)
        est.sizes.append(w.size)
        est.ratios.append(Fraction(w.dim, w.size))
        if w.count is not None:
            est.counts.append(w.count)
            est.entropy.append(math.log(w.count) / w.size)
    return est


@dataclass
class ConditionC:
    holds: bool
    tiles: int
    improper_tiles: list
    component_proper: bool | None
    estimate: MdimEstimate | None
    strictly_below: bool | None


def check_condition_C(ca: CellularAutomaton, tiling, k: int | None = None) -> ConditionC:
    """Every tile window ``Gamma_{gE}`` is a proper subset of ``A^{gE}``.

    Symbolic alphabets count a tile as proper only when its dimension drops;
    a tile that merely misses components is reported in ``component_proper``.
    When the condition holds, the Følner estimate on boxes inside the tiling
    region is checked to lie strictly below ``dim A`` (or ``log |A|``).
    """
    u = ca.universe
    region = set(tiling.region)
    if k is None:
        k = 0
        while True:
            try:
                box = folner_box(u, k)
            except NotAmenable:
                break
            if not set(box.elements) <= region or k > 12:
                break
            k += 1
    for i in range(k):
        if not set(folner_box(u, i).elements) <= region:
            raise RegionTooSmall(f"Følner box {i} is not inside the tiling region")
    if k == 0:
        raise RegionTooSmall("no Følner box fits inside the tiling region")
    symbolic = isinstance(ca.alphabet, SymbolicAlphabet)
    improper = []
    comp_proper = None
    for g in tiling.centers:
        tile = [u._mul(g, x) for x in tiling.E]
        w = window_dim(ca, tile)
        if symbolic:
            full_comp = ca.alphabet.components.order ** len(tile)
            if w.component_count < full_comp:
                comp_proper = True if comp_proper is None else comp_proper
            else:
                comp_proper = False
            if w.dim == ca.alphabet.rank * len(tile):
                improper.append(g)
        elif w.count == ca.alphabet.order ** len(tile):
            improper.append(g)
    holds = not improper and bool(tiling.centers)
    est = strict = None
    if holds:
        est = mdim_estimate(ca, k)
        if symbolic:
            strict = est.last < ca.alphabet.rank
        else:
            strict = est.counts[-1] < ca.alphabet.order ** est.sizes[-1]
    return ConditionC(holds, len(tiling.centers), improper, comp_proper, est, strict)
