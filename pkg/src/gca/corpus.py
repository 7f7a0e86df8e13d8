"""Seeded random corpora of group automata and the implication sweep."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from typing import Sequence

try:
    import tomllib
except ImportError:  # Python < 3.11
    import tomli as tomllib

from .alphabet import AbelianGroup, SymbolicAlphabet
from .automaton import CellularAutomaton, linear_ca
from .deciders import check_all
from .groups import Lattice
from .scenario import PROPERTIES, ScenarioParseError, ScenarioValidationError, build_universe, implication_violations


@dataclass
class CorpusSpec:
    size: int = 200
    seed: int = 1
    alphabets: list = field(default_factory=lambda: [[2], [3], [4], [2, 2]])
    memory_pool: list = field(default_factory=lambda: [-1, 0, 1])
    radius_max: int = 4
    properties: list = field(default_factory=lambda: list(PROPERTIES))
    group: dict = field(default_factory=lambda: {"kind": "Z"})


def parse_corpus(text: str) -> CorpusSpec:
    try:
        data = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise ScenarioParseError(str(exc)) from None
    sec = data.get("corpus", {})
    spec = CorpusSpec()
    for key in ("size", "seed", "radius_max"):
        if key in sec:
            setattr(spec, key, int(sec[key]))
    for key in ("alphabets", "memory_pool", "properties"):
        if key in sec:
            setattr(spec, key, list(sec[key]))
    if "group" in data:
        spec.group = dict(data["group"])
    validate_corpus(spec)
    return spec


def validate_corpus(spec: CorpusSpec) -> None:
    if spec.size < 0:
        raise ScenarioValidationError("corpus size must be nonnegative")
    u = build_universe(spec.group)
    if not (isinstance(u, Lattice) and u.dim == 1):
        if not u.amenable:
            raise ScenarioValidationError(f"{u} is not amenable; the Garden of Eden checks need amenability")
        raise ScenarioValidationError("corpus sweeps run over the universe Z")
    if not spec.memory_pool:
        raise ScenarioValidationError("empty memory pool")
    for p in spec.properties:
        if p not in PROPERTIES:
            raise ScenarioValidationError(f"unknown property {p!r}")
    for a in spec.alphabets:
        if not a or any(int(f) < 1 for f in a):
            raise ScenarioValidationError(f"bad alphabet factors {a!r}")


def random_matrix(rng: random.Random, A: AbelianGroup, m: int) -> list[list[int]]:
    """Uniform random hom ``A^m -> A`` as an integer matrix.

    Entry ``(r, c)`` maps ``Z/n_c`` to ``Z/n_r`` and must be a multiple of
    ``n_r / gcd(n_r, n_c)``.
    """
    mods_in = A.factors * m
    rows = []
    for n_out in A.factors:
        row = []
        for n_in in mods_in:
            g = math.gcd(n_out, n_in)
            row.append(rng.randrange(g) * (n_out // g))
        rows.append(row)
    return rows


def random_ca(rng: random.Random, factors: Sequence[int], pool: Sequence[int]) -> CellularAutomaton:
    A = AbelianGroup(factors)
    k = rng.randint(1, len(pool))
    memory = sorted(rng.sample(list(pool), k))
    return linear_ca(Lattice(1), A, memory, random_matrix(rng, A, len(memory)))


def random_symbolic_ca(rng: random.Random, kind: str, pool: Sequence[int], bound: int = 3) -> CellularAutomaton:
    A = SymbolicAlphabet(kind, 1)
    k = rng.randint(1, len(pool))
    memory = sorted(rng.sample(list(pool), k))
    return linear_ca(Lattice(1), A, memory, [[rng.randint(-bound, bound) for _ in memory]])


def generate(spec: CorpusSpec) -> list[CellularAutomaton]:
    rng = random.Random(spec.seed)
    return [random_ca(rng, rng.choice(spec.alphabets), spec.memory_pool) for _ in range(spec.size)]


def describe(ca: CellularAutomaton) -> dict:
    return {"alphabet": list(ca.alphabet.factors), "memory": list(ca.memory), "rule_matrix": ca.rule.matrix}


def run_corpus(spec: CorpusSpec) -> dict:
    validate_corpus(spec)
    tallies: dict = {p: {} for p in spec.properties}
    violations = []
    for i, ca in enumerate(generate(spec)):
        verdicts: dict = {"_ca": ca}
        for v in check_all(ca, spec.properties, spec.radius_max):
            verdicts[v.name] = v
            tallies[v.name][v.status] = tallies[v.name].get(v.status, 0) + 1
        bad = implication_violations(verdicts)
        if bad:
            violations.append({"index": i, "ca": describe(ca), "violations": bad,
                               "statuses": {k: v.status for k, v in verdicts.items() if k != "_ca"}})
    return {
        "corpus": {"size": spec.size, "seed": spec.seed, "alphabets": spec.alphabets,
                   "memory_pool": spec.memory_pool, "radius_max": spec.radius_max},
        "tallies": {p: dict(sorted(t.items())) for p, t in tallies.items()},
        "violations": violations,
    }
