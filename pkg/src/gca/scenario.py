"""Scenario files: TOML descriptions of a universe, an alphabet, an automaton
and the checks to run on it.

    [scenario]
    name = "doubling"

    [group]
    kind = "Z"

    [alphabet]
    kind = "finite_abelian"
    factors = [4]

    [ca]
    memory = [0]
    rule_matrix = [[2]]

    [check]
    properties = ["star", "starstar", "surjective", "post_surjective"]
    radius_max = 6

An optional ``[expect]`` table maps property names to expected statuses.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Any

try:
    import tomllib
except ImportError:  # Python < 3.11
    import tomli as tomllib

from .alphabet import AbelianGroup, NotAHomomorphism, SymbolicAlphabet, TableGroup
from .automaton import CellularAutomaton, NotGroupCA, linear_ca, table_ca
from .deciders import FALSE, TRUE, PropertyVerdict, check_all
from .groups import FiniteUniverse, FreeGroup, Lattice, UniverseMismatch

PROPERTIES = ("preinjective", "surjective", "post_surjective", "star", "starstar")


class ScenarioParseError(ValueError):
    pass


class ScenarioValidationError(ValueError):
    pass


@dataclass
class Scenario:
    name: str
    ca: CellularAutomaton
    properties: list
    radius_max: int
    seed: int = 0
    expect: dict = field(default_factory=dict)
    extra: dict = field(default_factory=dict)


def _section(data: dict, key: str) -> dict:
    sec = data.get(key)
    if not isinstance(sec, dict):
        raise ScenarioValidationError(f"missing [{key}] section")
    return sec


def build_universe(sec: dict):
    kind = sec.get("kind")
    gens = sec.get("generators")
    try:
        if kind == "Z":
            return Lattice(1, tuple(gens) if gens else ())
        if kind == "Zd":
            return Lattice(int(sec.get("dim", 2)), tuple(tuple(g) for g in gens) if gens else ())
        if kind == "finite":
            G = AbelianGroup(sec.get("factors", [1]))
            return FiniteUniverse(G, tuple(G.from_vec(g) if isinstance(g, list) else g for g in gens) if gens else ())
        if kind == "free":
            return FreeGroup(int(sec.get("rank", 2)), tuple(gens) if gens else ())
    except (ValueError, TypeError, UniverseMismatch) as exc:
        raise ScenarioValidationError(f"bad group: {exc}") from None
    raise ScenarioValidationError(f"unknown group kind {kind!r}")


def build_alphabet(sec: dict):
    kind = sec.get("kind")
    try:
        if kind == "finite_abelian":
            return AbelianGroup([int(f) for f in sec.get("factors", [])])
        if kind == "table":
            return TableGroup(sec["table"])
        if kind == "symbolic":
            return SymbolicAlphabet(sec.get("divisible", "torus"), int(sec.get("rank", 1)),
                                    AbelianGroup([int(f) for f in sec.get("components", [])]))
    except (ValueError, TypeError, KeyError) as exc:
        raise ScenarioValidationError(f"bad alphabet: {exc}") from None
    raise ScenarioValidationError(f"unknown alphabet kind {kind!r}")


def _element(u, x):
    if isinstance(u, Lattice):
        return u.element(x)
    if isinstance(u, FreeGroup):
        return u.element(x)
    G = u.group
    return G.from_vec(x) if isinstance(x, list) else x


def build_ca(u, A, sec: dict) -> CellularAutomaton:
    memory = sec.get("memory")
    if not isinstance(memory, list) or not memory:
        raise ScenarioValidationError("[ca] memory must be a nonempty list")
    try:
        memory = [_element(u, m) for m in memory]
        if "rule_matrix" in sec:
            return linear_ca(u, A, memory, sec["rule_matrix"], sec.get("component_matrix"))
        if "rule_table" in sec:
            return table_ca(u, A, memory, sec["rule_table"])
    except (ValueError, TypeError, KeyError, UniverseMismatch, NotAHomomorphism) as exc:
        raise ScenarioValidationError(f"bad automaton: {exc}") from None
    raise ScenarioValidationError("[ca] needs rule_matrix or rule_table")


def parse_scenario(text: str, default_name: str = "scenario") -> Scenario:
    try:
        data = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise ScenarioParseError(str(exc)) from None
    meta = data.get("scenario", {})
    u = build_universe(_section(data, "group"))
    A = build_alphabet(_section(data, "alphabet"))
    ca = build_ca(u, A, _section(data, "ca"))
    check = data.get("check", {})
    props = list(check.get("properties", PROPERTIES))
    for p in props:
        if p not in PROPERTIES:
            raise ScenarioValidationError(f"unknown property {p!r}")
    radius = int(check.get("radius_max", 4))
    if radius < 0:
        raise ScenarioValidationError("radius_max must be nonnegative")
    if not ca.is_group:
        raise ScenarioValidationError("the local rule is not a homomorphism")
    expect = dict(data.get("expect", {}))
    extra = {k: v for k, v in data.items() if k not in ("scenario", "group", "alphabet", "ca", "check", "expect")}
    return Scenario(meta.get("name", default_name), ca, props, radius, int(meta.get("seed", 0)), expect, extra)


# ---------------------------------------------------------------------------
# shipped scenarios


def registry() -> dict[str, str]:
    """Name -> file text of the scenarios shipped with the package."""
    out = {}
    for entry in sorted(resources.files("gca.scenarios").iterdir(), key=lambda p: p.name):
        if entry.name.endswith(".scn") or entry.name.endswith(".toml"):
            out[entry.name.rsplit(".", 1)[0]] = entry.read_text(encoding="utf-8")
    return out


def resolve(path_or_name: str) -> tuple[str, str]:
    """File text for a path, falling back to a shipped scenario of the same stem."""
    p = Path(path_or_name)
    if p.is_file():
        return p.stem, p.read_text(encoding="utf-8")
    reg = registry()
    if p.stem in reg:
        return p.stem, reg[p.stem]
    raise FileNotFoundError(path_or_name)


def load_scenario(path_or_name: str) -> Scenario:
    name, text = resolve(path_or_name)
    return parse_scenario(text, name)


# ---------------------------------------------------------------------------
# reports


def jsonable(x: Any) -> Any:
    """Plain JSON data with a stable order."""
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in sorted(x.items(), key=lambda kv: _key(kv[0]))}
    if isinstance(x, (frozenset, set)):
        return [jsonable(v) for v in sorted(x, key=_key)]
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, (str, int, float, bool)) or x is None:
        return x
    if hasattr(x, "period") and hasattr(x, "values"):
        return {"period": list(x.period), "values": jsonable(x.values)}
    return str(x)


def _key(v):
    return (type(v).__name__, v) if isinstance(v, (int, str, tuple)) else (type(v).__name__, str(v))


def verdict_record(v: PropertyVerdict, ms: float) -> dict:
    rec = {"name": v.name, "status": v.status, "witness": jsonable(v.witness),
           "bound": jsonable(v.bound), "ms": round(ms, 3)}
    if v.certificate:
        rec["certificate"] = v.certificate
    if v.chain is not None:
        rec["chain"] = {"radii": v.chain.radii, "Z": jsonable(v.chain.Z), "full_at": v.chain.full_at}
    return rec


def implication_violations(verdicts: dict) -> list[str]:
    """Theorem instances contradicted by a set of verdicts on one automaton."""
    def st(name):
        v = verdicts.get(name)
        return v.status if v is not None else None

    out = []
    if st("post_surjective") == TRUE and st("star") == FALSE:
        out.append("post-surjective but not (•)-pre-injective")
    if st("post_surjective") == TRUE and st("surjective") == FALSE:
        out.append("post-surjective but not surjective")
    if st("star") == TRUE and st("starstar") == FALSE:
        out.append("(•)-pre-injective but not (••)-pre-injective")
    pre, sur = st("preinjective"), st("surjective")
    if pre in (TRUE, FALSE) and sur in (TRUE, FALSE) and pre != sur:
        ca = verdicts["_ca"]
        if ca.universe.amenable and not isinstance(ca.alphabet, SymbolicAlphabet):
            out.append("pre-injectivity and surjectivity disagree on an amenable universe")
    elif pre == TRUE and sur == FALSE and verdicts["_ca"].universe.amenable:
        out.append("pre-injective but not surjective on an amenable universe")
    return sorted(set(out))


def run_scenario(sc: Scenario) -> dict:
    checks = []
    verdicts: dict = {"_ca": sc.ca}
    for prop in sc.properties:
        t0 = time.perf_counter()
        try:
            (v,) = check_all(sc.ca, [prop], sc.radius_max)
        except NotGroupCA as exc:
            raise ScenarioValidationError(str(exc)) from None
        ms = (time.perf_counter() - t0) * 1000
        verdicts[prop] = v
        checks.append(verdict_record(v, ms))
    mismatches = [
        {"name": k, "expected": want, "got": verdicts[k].status}
        for k, want in sorted(sc.expect.items())
        if k in verdicts and verdicts[k].status != want
    ]
    return {
        "scenario": sc.name,
        "checks": checks,
        "violations": implication_violations(verdicts),
        "expectation_mismatches": mismatches,
    }


def strip_timings(report: Any) -> Any:
    if isinstance(report, dict):
        return {k: strip_timings(v) for k, v in report.items() if k != "ms"}
    if isinstance(report, list):
        return [strip_timings(v) for v in report]
    return report
