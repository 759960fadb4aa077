"""Run statements over instances and aggregate the outcome."""
import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from ..budget import get_budget, set_budget
from .instances import Instance, InstanceSpec, parse_family
from .statements import ALL_IDS, CATALOG, OUT_OF_SCOPE, get_statement


@dataclass
class StatementStats:
    instances: int = 0
    cases: int = 0
    hypotheses: int = 0
    verified: int = 0
    counterexamples: list = field(default_factory=list)

    def add_case(self, case, sid, spec):
        self.cases += 1
        if not case.hypothesis:
            return
        self.hypotheses += 1
        if case.holds:
            self.verified += 1
        else:
            self.counterexamples.append({
                "statement": sid,
                "instance": json.loads(spec.to_json()),
                "digest": spec.digest(),
                "case": case.key,
                "detail": case.detail,
            })

    def merge(self, other):
        return StatementStats(
            self.instances + other.instances, self.cases + other.cases,
            self.hypotheses + other.hypotheses, self.verified + other.verified,
            self.counterexamples + other.counterexamples)

    def as_dict(self):
        return {
            "instances": self.instances, "cases": self.cases,
            "hypotheses": self.hypotheses, "verified": self.verified,
            "counterexamples": self.counterexamples,
        }


@dataclass
class SweepReport:
    stats: dict = field(default_factory=dict)
    instances: int = 0
    loops: int = 0
    wall_time: float = 0.0
    out_of_scope: dict = field(default_factory=lambda: dict(OUT_OF_SCOPE))

    @property
    def counterexamples(self):
        return [c for s in self.stats.values() for c in s.counterexamples]

    @property
    def ok(self):
        return not self.counterexamples

    def merge(self, other):
        ids = list(self.stats) + [i for i in other.stats if i not in self.stats]
        stats = {}
        for i in ids:
            a, b = self.stats.get(i), other.stats.get(i)
            stats[i] = a.merge(b) if a and b else (a or b)
        return SweepReport(stats, self.instances + other.instances, self.loops + other.loops,
                           self.wall_time + other.wall_time, dict(self.out_of_scope))

    def as_dict(self, timing=False):
        d = {
            "instances": self.instances,
            "loops": self.loops,
            "out_of_scope": self.out_of_scope,
            "statements": {i: s.as_dict() for i, s in self.stats.items()},
            "counterexamples": len(self.counterexamples),
        }
        if timing:
            d["wall_time"] = round(self.wall_time, 3)
        return d


def _run_instance(args):
    spec_json, ids, budget = args
    spec = InstanceSpec.from_json(spec_json)
    saved = get_budget()
    if budget is not None:
        set_budget(budget)
    try:
        inst = Instance(spec)
        start = time.perf_counter()
        report = SweepReport(instances=1)
        for sid in ids:
            st = StatementStats()
            for case in get_statement(sid).check(inst):
                st.add_case(case, sid, spec)
            st.instances = 1 if st.cases else 0
            report.stats[sid] = st
        report.loops = inst.loops
        report.wall_time = time.perf_counter() - start
        return report
    finally:
        set_budget(saved)


def _normalize_ids(ids):
    if ids is None or ids == "all":
        return list(ALL_IDS)
    if isinstance(ids, str):
        ids = [ids]
    for i in ids:
        get_statement(i)
    order = {k: n for n, k in enumerate(CATALOG)}
    return sorted(set(ids), key=order.__getitem__)


def verify_statement(id, instance, budget=None):
    """Run one statement on one instance (an :class:`InstanceSpec`)."""
    get_statement(id)
    spec = instance if isinstance(instance, InstanceSpec) else InstanceSpec.from_json(instance)
    return _run_instance((spec.to_json(), [id], budget))


def plan(ids, specs):
    """Pair each instance with the statements it should run.

    Statements that only look at (R1, M, S) run once per distinct base.
    """
    ids = _normalize_ids(ids)
    seen = set()
    tasks = []
    for spec in specs:
        base = spec.base_digest()
        run = [i for i in ids if CATALOG[i].scope != "base" or base not in seen]
        seen.add(base)
        if run:
            tasks.append((spec, run))
    return tasks


def sweep(ids=None, family="zmod:2-12", workers=1, seed=0, budget=None, progress=None):
    """Check ``ids`` over every instance of ``family`` (a description string
    or a list of specs). Results merge in instance order regardless of
    worker completion order."""
    specs = parse_family(family, seed) if isinstance(family, str) else list(family)
    tasks = plan(ids, specs)
    payload = [(spec.to_json(), run, budget) for spec, run in tasks]
    start = time.perf_counter()
    report = SweepReport(stats={i: StatementStats() for i in _normalize_ids(ids)})
    if workers and workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = pool.map(_run_instance, payload)
            for n, part in enumerate(results):
                report = report.merge(part)
                if progress:
                    progress(n + 1, len(payload))
    else:
        for n, args in enumerate(payload):
            report = report.merge(_run_instance(args))
            if progress:
                progress(n + 1, len(payload))
    report.instances = len(specs)
    report.wall_time = time.perf_counter() - start
    return report


def recheck(counterexample, budget=None):
    """Re-run a serialized counterexample; returns the case it maps to now
    (None if the case no longer arises)."""
    spec = InstanceSpec.from_json(counterexample["instance"])
    saved = get_budget()
    if budget is not None:
        set_budget(budget)
    try:
        inst = Instance(spec)
        for case in get_statement(counterexample["statement"]).check(inst):
            if case.key == counterexample["case"]:
                return case
        return None
    finally:
        set_budget(saved)
