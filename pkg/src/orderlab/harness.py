"""Campaign runner: law suites over (poset x relation x subset) scopes.

Instances are generated in a fixed order (suites alphabetically, posets in
scope order, relations in enumeration order, subsets ascending), so two
runs with the same scope and seed produce byte-identical reports, with any
number of worker threads.  Each failure or finding carries a fingerprint
that reconstructs the instance exactly; replay re-executes it in
isolation.
"""

from __future__ import annotations

import json
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Iterable

from .approx import (
    check_adjunction,
    check_algebra,
    check_basic_laws,
    check_int_equivalences,
    check_partition,
)
from .auxrel import (
    AuxRelation,
    bottom_aux,
    classify,
    enumerate_aux,
    leq_aux,
    sample_aux,
    validate_aux,
    way_below,
)
from .bitset import ElementSet
from .closures import check_sec5_theorems, has_one_step_closure
from .errors import BadParameters, BudgetExceeded
from .poset import Poset, enumerate_posets, from_rows, poset_to_json
from .report import CheckReport
from .topology import (
    check_chain_of_containments,
    check_continuity_characterization,
    check_cspace_theorems,
    check_mu_laws,
    check_mu_way_below_is_scott,
    is_c_space,
    is_continuous,
    mu_topology,
    opens_completely_distributive,
)

VERSION = "0.1.0"

SUITES = (
    "algebra",
    "chain",
    "continuity",
    "cspace",
    "int-char",
    "mu-topology",
    "partition",
    "sec5",
)

_REL_MODES = ("enumerate", "sample", "builtins")
_SUBSET_MODES = ("all", "sample")
_BUILTIN_RELS = ("leq", "bottom", "way-below")


@dataclass(frozen=True)
class Scope:
    """What to quantify over: posets, relations on them, subsets of them."""

    max_n: int = 3
    up_to_iso: bool = False
    posets: tuple[Poset, ...] | None = None
    rel_mode: str = "enumerate"
    rel_sample: int = 5
    rel_builtins: tuple[str, ...] = ("leq",)
    subset_mode: str = "all"
    subset_sample: int = 8
    seed: int = 0
    max_instances: int | None = None
    wall_time_s: float | None = None

    def __post_init__(self):
        if self.posets is None and self.max_n < 1:
            raise BadParameters("max_n must be at least 1")
        if self.rel_mode not in _REL_MODES:
            raise BadParameters(f"rel_mode must be one of {_REL_MODES}")
        if self.subset_mode not in _SUBSET_MODES:
            raise BadParameters(f"subset_mode must be one of {_SUBSET_MODES}")
        if self.rel_mode == "sample" and self.rel_sample < 1:
            raise BadParameters("rel_sample must be positive")
        if self.subset_mode == "sample" and self.subset_sample < 1:
            raise BadParameters("subset_sample must be positive")
        for name in self.rel_builtins:
            if name not in _BUILTIN_RELS:
                raise BadParameters(f"unknown builtin relation {name!r}")
        if self.max_instances is not None and self.max_instances < 1:
            raise BadParameters("max_instances must be positive")
        if self.wall_time_s is not None and self.wall_time_s <= 0:
            raise BadParameters("wall_time_s must be positive")


def _scope_posets(scope: Scope) -> list[Poset]:
    if scope.posets is not None:
        return list(scope.posets)
    out = []
    for n in range(1, scope.max_n + 1):
        out.extend(enumerate_posets(n, up_to_iso=scope.up_to_iso))
    return out


def _builtin_rel(p: Poset, name: str) -> AuxRelation | None:
    if name == "leq":
        return leq_aux(p)
    if name == "bottom":
        return bottom_aux(p)
    if p.n > 20:
        return None
    return way_below(p)


def _scope_relations(scope: Scope, p: Poset, pi: int) -> list[AuxRelation]:
    if scope.rel_mode == "enumerate":
        return list(enumerate_aux(p))
    if scope.rel_mode == "builtins":
        rels = []
        for name in scope.rel_builtins:
            r = _builtin_rel(p, name)
            if r is not None and not any(r.sec == q.sec for q in rels):
                rels.append(r)
        return rels
    rels = []
    seen = set()
    for k in range(scope.rel_sample):
        r = sample_aux(p, seed=scope.seed * 1000003 + pi * 1009 + k)
        if r.sec not in seen:
            seen.add(r.sec)
            rels.append(r)
    return rels


def _scope_subsets(scope: Scope, p: Poset, pi: int) -> list[int]:
    total = 1 << p.n
    if scope.subset_mode == "all" or scope.subset_sample >= total:
        return list(range(total))
    import random

    rng = random.Random(scope.seed * 69069 + pi * 40503 + 7)
    return sorted(rng.sample(range(total), scope.subset_sample))


@dataclass(frozen=True)
class Instance:
    """One checker execution, fully determined by plain data."""

    suite: str
    rows: tuple[int, ...]
    rel: tuple[tuple[int, int], ...] | None = None
    subset: int | None = None
    rel2: tuple[tuple[int, int], ...] | None = None


def fingerprint(inst: Instance) -> str:
    doc = [
        inst.suite,
        list(inst.rows),
        [list(pr) for pr in inst.rel] if inst.rel is not None else None,
        inst.subset,
        [list(pr) for pr in inst.rel2] if inst.rel2 is not None else None,
    ]
    return json.dumps(doc, separators=(",", ":")).encode("ascii").hex()


def parse_fingerprint(fp: str) -> Instance:
    try:
        suite, rows, rel, subset, rel2 = json.loads(bytes.fromhex(fp).decode("ascii"))
    except (ValueError, TypeError) as exc:
        raise BadParameters(f"malformed fingerprint: {exc}") from exc
    return Instance(
        suite,
        tuple(rows),
        tuple((a, b) for a, b in rel) if rel is not None else None,
        subset,
        tuple((a, b) for a, b in rel2) if rel2 is not None else None,
    )


def _run_instance(inst: Instance) -> CheckReport:
    p = from_rows(inst.rows, check=False)
    r = validate_aux(p, inst.rel) if inst.rel is not None else None
    a = ElementSet(inst.subset, p.n) if inst.subset is not None else None
    suite = inst.suite
    if suite.startswith("property:"):
        prop_id = suite.split(":", 1)[1]
        prop = PROPERTIES.get(prop_id)
        if prop is None:
            raise BadParameters(f"unknown property {prop_id!r}")
        detail = prop.test(p, r) if prop.needs_relation else prop.test(p)
        rep = CheckReport(f"property {prop_id}", "single instance")
        rep.add(
            f"property.{prop_id}",
            detail is not None,
            detail,
            finding=True,
            note="passed means the counterexample reproduces",
        )
        return rep
    if suite == "int-char":
        return check_int_equivalences(r)
    if suite == "partition":
        return check_partition(r, a)
    if suite == "algebra":
        if inst.rel2 is not None:
            return check_algebra(r, validate_aux(p, inst.rel2))
        if a is not None:
            return check_basic_laws(r, sets=[a])
        return check_adjunction(r)
    if suite == "chain":
        if r is None:
            return check_mu_way_below_is_scott(p)
        return check_chain_of_containments(r, a)
    if suite == "continuity":
        return check_continuity_characterization(p)
    if suite == "cspace":
        return check_cspace_theorems(r)
    if suite == "mu-topology":
        return check_mu_laws(r)
    if suite == "sec5":
        return check_sec5_theorems(p)
    raise BadParameters(f"unknown suite {suite!r}")


def _instances_for(
    suite: str, scope: Scope, p: Poset, pi: int
) -> Iterable[Instance]:
    rows = p.up
    if suite in ("continuity", "sec5"):
        yield Instance(suite, rows)
        return
    if suite == "chain":
        yield Instance(suite, rows)
    rels = _scope_relations(scope, p, pi)
    subsets = _scope_subsets(scope, p, pi)
    for r in rels:
        pairs = tuple(r.pairs())
        cls = classify(r)
        if suite == "int-char":
            yield Instance(suite, rows, pairs)
        elif suite == "partition":
            for bits in subsets:
                yield Instance(suite, rows, pairs, bits)
        elif suite == "algebra":
            yield Instance(suite, rows, pairs)
            yield Instance(suite, rows, pairs, rel2=tuple(leq_aux(p).pairs()))
            for bits in subsets:
                yield Instance(suite, rows, pairs, bits)
        elif suite == "chain":
            if cls.approximating:
                for bits in subsets:
                    yield Instance(suite, rows, pairs, bits)
        elif suite in ("cspace", "mu-topology"):
            if cls.pre_approximating:
                yield Instance(suite, rows, pairs)


def _jsonable(value):
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, (str, int, float, bool)) or value is None:
        return value
    return str(value)


@dataclass
class RunReport:
    suites: tuple[str, ...]
    attempted: int
    passed: int
    failures: list[dict]
    findings: list[dict]
    seed: int
    incomplete: bool = False
    elapsed_s: float = 0.0
    version: str = VERSION
    schema: int = 1

    def to_dict(self, include_timing: bool = False) -> dict:
        doc = {
            "schema": self.schema,
            "version": self.version,
            "suites": list(self.suites),
            "attempted": self.attempted,
            "passed": self.passed,
            "failures": self.failures,
            "findings": self.findings,
            "seed": self.seed,
            "incomplete": self.incomplete,
        }
        if include_timing:
            doc["elapsed_s"] = self.elapsed_s
        return doc

    def to_json(self, include_timing: bool = False) -> str:
        return json.dumps(
            self.to_dict(include_timing), indent=2, sort_keys=True
        )

    @property
    def exit_code(self) -> int:
        if self.failures:
            return 1
        if self.findings:
            return 3
        return 0


def run_suite(scope: Scope, suites: Iterable[str], jobs: int = 1) -> RunReport:
    suite_list = tuple(sorted(set(suites)))
    for s in suite_list:
        if s not in SUITES:
            raise BadParameters(f"unknown suite {s!r}")
    posets = _scope_posets(scope)
    instances: list[Instance] = []
    incomplete = False
    try:
        for suite in suite_list:
            for pi, p in enumerate(posets):
                for inst in _instances_for(suite, scope, p, pi):
                    if (
                        scope.max_instances is not None
                        and len(instances) >= scope.max_instances
                    ):
                        incomplete = True
                        raise StopIteration
                    instances.append(inst)
    except StopIteration:
        pass
    except BudgetExceeded:
        incomplete = True

    start = time.monotonic()
    deadline = start + scope.wall_time_s if scope.wall_time_s else None
    executed: list[tuple[Instance, CheckReport]] = []
    if jobs <= 1:
        for inst in instances:
            if deadline is not None and time.monotonic() > deadline:
                incomplete = True
                break
            executed.append((inst, _run_instance(inst)))
    else:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            pending = []
            for inst in instances:
                if deadline is not None and time.monotonic() > deadline:
                    incomplete = True
                    break
                pending.append((inst, pool.submit(_run_instance, inst)))
            executed = [(inst, fut.result()) for inst, fut in pending]

    failures: list[dict] = []
    findings: list[dict] = []
    passed = 0
    for inst, rep in executed:
        fp = fingerprint(inst)
        bad = rep.failures
        for v in bad:
            failures.append(
                {"law": v.law, "fingerprint": fp, "witness": _jsonable(v.witness)}
            )
        for v in rep.findings:
            findings.append(
                {"law": v.law, "fingerprint": fp, "witness": _jsonable(v.witness)}
            )
        if not bad:
            passed += 1
    return RunReport(
        suites=suite_list,
        attempted=len(executed),
        passed=passed,
        failures=failures,
        findings=findings,
        seed=scope.seed,
        incomplete=incomplete,
        elapsed_s=time.monotonic() - start,
    )


def replay(entry: dict | str) -> CheckReport:
    """Re-execute the instance behind a failure/finding in isolation."""
    fp = entry["fingerprint"] if isinstance(entry, dict) else entry
    return _run_instance(parse_fingerprint(fp))


# -- counterexample search -----------------------------------------------------


@dataclass(frozen=True)
class PropertySpec:
    needs_relation: bool
    test: Callable


PROPERTIES: dict[str, PropertySpec] = {}


def register_property(name: str, needs_relation: bool, test: Callable) -> None:
    if name in PROPERTIES:
        raise BadParameters(f"property {name!r} already registered")
    PROPERTIES[name] = PropertySpec(needs_relation, test)


def _prop_cspace_implies_approximating(p: Poset, r: AuxRelation) -> dict | None:
    cls = classify(r)
    if not cls.pre_approximating or cls.approximating:
        return None
    mu = mu_topology(r)
    spec_mode, _ = is_c_space(mu, "specialization")
    if not spec_mode:
        return None
    under_mode, _ = is_c_space(mu, "underlying")
    return {
        "c-space-specialization": True,
        "c-space-underlying": under_mode,
        "approximating": False,
    }


def _prop_cdl_implies_approximating(p: Poset, r: AuxRelation) -> dict | None:
    cls = classify(r)
    if not cls.pre_approximating or not cls.has_int or cls.approximating:
        return None
    if not opens_completely_distributive(mu_topology(r)):
        return None
    return {"completely-distributive": True, "approximating": False}


def _prop_one_step_without_continuity(p: Poset) -> dict | None:
    one_step_ok, _ = has_one_step_closure(p)
    if one_step_ok and not is_continuous(p):
        return {"one-step-closure": True, "continuous": False}
    return None


def _prop_int_equivalence_break(p: Poset, r: AuxRelation) -> dict | None:
    rep = check_int_equivalences(r)
    v = rep.verdict("int-char.agreement")
    if v is not None and not v.passed:
        return _jsonable(v.witness) or {"agreement": False}
    return None


PROPERTIES["cspace-implies-approximating"] = PropertySpec(
    True, _prop_cspace_implies_approximating
)
PROPERTIES["cdl-implies-approximating"] = PropertySpec(
    True, _prop_cdl_implies_approximating
)
PROPERTIES["one-step-without-continuity"] = PropertySpec(
    False, _prop_one_step_without_continuity
)
PROPERTIES["int-equivalence-break"] = PropertySpec(
    True, _prop_int_equivalence_break
)


def search_counterexample(property_id: str, scope: Scope) -> dict | None:
    """First witness in deterministic scope order, or None."""
    prop = PROPERTIES.get(property_id)
    if prop is None:
        raise BadParameters(f"unknown property {property_id!r}")
    posets = _scope_posets(scope)
    deadline = (
        time.monotonic() + scope.wall_time_s if scope.wall_time_s else None
    )
    tested = 0

    def budget_gate():
        nonlocal tested
        tested += 1
        if scope.max_instances is not None and tested > scope.max_instances:
            raise BudgetExceeded("instance cap reached during search")
        if deadline is not None and time.monotonic() > deadline:
            raise BudgetExceeded("wall time exhausted during search")

    for pi, p in enumerate(posets):
        if prop.needs_relation:
            for r in _scope_relations(scope, p, pi):
                budget_gate()
                detail = prop.test(p, r)
                if detail is not None:
                    inst = Instance(
                        f"property:{property_id}", p.up, tuple(r.pairs())
                    )
                    return {
                        "property": property_id,
                        "fingerprint": fingerprint(inst),
                        "poset": poset_to_json(p),
                        "relation": [list(pr) for pr in r.pairs()],
                        "detail": _jsonable(detail),
                    }
        else:
            budget_gate()
            detail = prop.test(p)
            if detail is not None:
                inst = Instance(f"property:{property_id}", p.up)
                return {
                    "property": property_id,
                    "fingerprint": fingerprint(inst),
                    "poset": poset_to_json(p),
                    "relation": None,
                    "detail": _jsonable(detail),
                }
    return None
