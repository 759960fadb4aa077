"""The canned example suite: known verdicts on specific submodules, each
also pushed through the amalgamation equivalence."""
from dataclasses import dataclass

from ..module import Submodule, is_2absorbing_submodule
from .instances import Instance, InstanceSpec
from .sweep import verify_statement


@dataclass(frozen=True)
class ExampleItem:
    name: str
    spec: InstanceSpec
    submodule: tuple          # members of F in M
    expected_holds: bool
    expected_witness: tuple = None   # (a, b, m) as carrier indices
    note: str = ""


def worked_examples():
    z30 = ("zmod", 30)
    return [
        ExampleItem(
            "Z30 zero submodule",
            InstanceSpec(r1=z30, J=(0, 15), label="Z30, J={0,15}"),
            (0,), False, (2, 3, 5),
            "abm = 30 = 0 with ab = 6, am = 10, bm = 15 all nonzero"),
        ExampleItem(
            "Z5 + Z6 over Z30 zero submodule",
            InstanceSpec(r1=z30, J=(0,), m=("sum", ("quotient", (5,)), ("quotient", (6,))),
                         label="Z30 acting on Z5 + Z6, J=0"),
            (0,), False, (2, 3, 1),
            "finite stand-in for an infinite first factor: 6(0,1) = 0 while 6 does not "
            "kill the module and 2(0,1), 3(0,1) are nonzero"),
        ExampleItem(
            "Z6 prime submodule {0,2,4}",
            InstanceSpec(r1=("zmod", 6), J=(0, 3), label="Z6, J={0,3}"),
            (0, 2, 4), True, None,
            "prime, hence 2-absorbing"),
    ]


def run_example(item, budget=None):
    """Check the item's verdict directly and through the amalgamation.

    Returns a dict with the observed verdict, whether it matches the
    expectation, and the T3_4a report restricted to the item's submodule.
    """
    inst = Instance(item.spec)
    F = Submodule(inst.M, list(item.submodule))
    v = is_2absorbing_submodule(inst.M, F, budget)
    witness = tuple(int(x) for x in v.witness) if v.witness is not None else None
    report = verify_statement("T3_4a", item.spec, budget)
    case = next(_t34a_cases(item.spec, item.submodule, budget), None)
    names = None
    if witness is not None:
        R, M = inst.R1, inst.M
        names = {"a": R.name(witness[0]), "b": R.name(witness[1]), "m": M.name(witness[2])}
    matches = v.holds == item.expected_holds and witness == item.expected_witness
    amalg_ok = case is not None and case.holds and case.detail["left"]["holds"] == item.expected_holds
    return {
        "name": item.name,
        "instance": item.spec.describe(),
        "digest": item.spec.digest(),
        "submodule": list(item.submodule),
        "holds": v.holds,
        "witness": list(witness) if witness else None,
        "witness_names": names,
        "expected_holds": item.expected_holds,
        "expected_witness": list(item.expected_witness) if item.expected_witness else None,
        "matches": bool(matches),
        "amalgam_holds": None if case is None else case.detail["left"]["holds"],
        "amalgam_consistent": bool(amalg_ok),
        "T3_4a_counterexamples": len(report.counterexamples),
        "note": item.note,
    }


def _t34a_cases(spec, members, budget):
    from .statements import get_statement
    inst = Instance(spec, budget)
    want = sorted(int(x) for x in members)
    for case in get_statement("T3_4a").check(inst):
        if case.key[1] == want:
            yield case
