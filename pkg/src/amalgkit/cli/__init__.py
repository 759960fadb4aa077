"""Command line front end: ``amalgkit <command> [options]``.

Exit codes: 0 when every verdict holds, 1 when any verdict fails or a
counterexample is found, 2 on input errors.
"""
import argparse
import math
import sys
import time
from contextlib import nullcontext

import numpy as np

from ..budget import budget_limit
from ..constructions import (
    amalgam_submodule,
    amalgamated_module,
    bar_submodule,
    localize_module,
    localize_ring,
)
from ..errors import AlgebraError
from ..module import (
    ModuleHom,
    Submodule,
    enumerate_submodules,
    is_2absorbing_submodule,
    is_primary_submodule,
    is_prime_submodule,
)
from ..ring import Ideal, enumerate_ideals, identity_hom, is_2absorbing_ideal, is_prime_ideal
from ..verifier import InstanceSpec, worked_examples, run_example, sweep
from ..verifier.statements import ALL_IDS, CATALOG, OUT_OF_SCOPE
from .parser import ParseError, ValidationError, parse_instance_file, parse_instance_text
from .report import EXIT_INPUT, Record, Report

__all__ = ["main", "parse_instance_file", "parse_instance_text", "ParseError",
           "ValidationError", "Report", "Record", "run_subcommand"]


class UnknownCommand(Exception):
    pass


def _names(parent, mask_or_subset):
    mask = getattr(mask_or_subset, "mask", mask_or_subset)
    return [parent.name(i) for i in np.flatnonzero(mask)]


def _witness_names(verdict, ring, module=None):
    if verdict.holds:
        return None
    out = {}
    for role, value in zip(verdict.roles, verdict.witness):
        if role == "m" and module is not None:
            out[role] = module.name(value)
        else:
            out[role] = ring.name(value)
    return out


# context selection


def _pick(inst, kind, name, required=True, last=False):
    """The named binding, else the first (or last) one of that kind."""
    if name:
        if name not in inst or inst[name].kind != kind:
            raise ValidationError(name, f"no {kind} named {name}")
        return inst[name]
    found = inst.of_kind(kind)
    if not found:
        if required:
            raise ValidationError(kind, f"the instance file declares no {kind}")
        return None
    return found[-1] if last else found[0]


def select_context(inst, args):
    """Bindings for f, J, phi, M, N and S, from flags or file order."""
    phi_b = _pick(inst, "modhom", getattr(args, "modhom", None), required=False)
    if phi_b is not None:
        phi = phi_b.value
        M_b, N_b = inst[phi_b.parent[0]], inst[phi_b.parent[1]]
        f_b = inst[phi_b.parent[2]] if phi_b.parent[2] else None
    else:
        # composites are declared after their parts, so default to the last module
        M_b = _pick(inst, "module", getattr(args, "module", None), last=True)
        N_b, f_b = M_b, None
        M = M_b.value
        phi = ModuleHom(identity_hom(M.ring), M, M, np.arange(M.size), validate=False)
    f = phi.f
    J_name = getattr(args, "ideal", None)
    if J_name:
        J_b = _pick(inst, "ideal", J_name)
    else:
        J_b = next((b for b in inst.of_kind("ideal") if b.value.parent.same_as(f.cod)), None)
    J = J_b.value if J_b else Ideal(f.cod, [f.cod.zero])
    if not J.parent.same_as(f.cod):
        raise ValidationError(J_b.name, "J must be an ideal of the codomain ring")
    S_b = _pick(inst, "multset", getattr(args, "multset", None), required=False)
    return {"f": f, "f_b": f_b, "J": J, "J_b": J_b, "phi": phi, "phi_b": phi_b,
            "M_b": M_b, "N_b": N_b, "S_b": S_b}


def spec_from_file(inst, args):
    """Translate the selected bindings into an :class:`InstanceSpec`."""
    c = select_context(inst, args)
    M_b, N_b = c["M_b"], c["N_b"]
    if M_b.expr is None or M_b.ring_expr is None or N_b.expr is None or N_b.ring_expr is None:
        raise ValidationError(M_b.name, "module is not expressible as an instance description "
                                        "(restricted modules are not supported here)")
    f_expr = "identity"
    if c["f_b"] is not None:
        f_expr = c["f_b"].expr
        if f_expr is None:
            raise ValidationError(c["f_b"].name, "hom is not expressible")
    same_ring = M_b.ring_expr == N_b.ring_expr
    if f_expr != "identity" and same_ring and np.array_equal(c["f"].map, np.arange(c["f"].dom.size)):
        f_expr = "identity"
    phi = c["phi"]
    same_module = N_b is M_b or (same_ring and N_b.expr == M_b.expr)
    ident = same_module and f_expr == "identity" and np.array_equal(phi.map, np.arange(phi.dom.size))
    S = tuple(int(x) for x in c["S_b"].value.elements) if c["S_b"] else None
    if S is not None and not c["S_b"].value.parent.same_as(c["f"].dom):
        raise ValidationError(c["S_b"].name, "S must live in the ring of M")
    return InstanceSpec(
        r1=M_b.ring_expr, r2=None if same_ring else N_b.ring_expr, f=f_expr,
        J=tuple(int(x) for x in c["J"].elements), m=M_b.expr,
        n=None if same_module else N_b.expr,
        phi="identity" if ident else ("map", tuple(int(x) for x in phi.map)), S=S)


# subcommands


def cmd_check(args, inst):
    rep = Report("check")
    digest = inst.digest()
    b = inst[args.name] if args.name in inst else None
    if b is None or b.kind not in ("submodule", "ideal"):
        raise ValidationError(args.name, "check needs a submodule or ideal name")
    wanted = args.only.split(",") if args.only else ["prime", "2-absorbing", "primary"]
    if b.kind == "submodule":
        F = b.value
        M = F.parent
        rep.info = {"module": M.label, "|M|": M.size, "submodule": _names(M, F)}
        preds = {"prime": is_prime_submodule, "2-absorbing": is_2absorbing_submodule,
                 "primary": is_primary_submodule}
        for key in wanted:
            if key not in preds:
                raise ValidationError(key, "unknown predicate")
            v = preds[key](M, F)
            rep.add(f"{b.name}:{key}", digest, v.holds, _witness_names(v, M.ring, M),
                    label=f"{key}:")
    else:
        I = b.value
        R = I.parent
        rep.info = {"ring": R.label, "|R|": R.size, "ideal": _names(R, I)}
        for key in wanted:
            if key == "prime":
                v = is_prime_ideal(R, I)
            elif key == "2-absorbing":
                v = is_2absorbing_ideal(R, I, strict_nonzero=args.strict)
            elif key == "primary":
                continue
            else:
                raise ValidationError(key, "unknown predicate")
            rep.add(f"{b.name}:{key}", digest, v.holds, _witness_names(v, R), label=f"{key}:")
    return rep


def cmd_amalgamate(args, inst):
    c = select_context(inst, args)
    ctx = amalgamated_module(c["f"], c["J"], c["phi"])
    digest = inst.digest()
    R1, M = c["f"].dom, c["phi"].dom
    info = {
        "|R1|": R1.size, "|J|": len(c["J"]), "|R1 join J|": ctx.amalg_ring.size,
        "|M|": M.size, "|JN|": len(ctx.JN), "|M join JN|": ctx.amalg_module.size,
        "|f(R1)+J|": ctx.subring.size, "|phi(M)+JN|": ctx.target.size,
    }
    for b in inst.of_kind("submodule"):
        if b.value.parent is M:
            A = amalgam_submodule(ctx, b.value)
            info[f"{b.name} join JN"] = _names(ctx.amalg_module, A)
        if b.value.parent is ctx.N:
            pos = ctx.target_index(np.flatnonzero(b.value.mask))
            if (pos >= 0).all():
                N2 = Submodule(ctx.target, pos)
                info[f"bar {b.name}"] = _names(ctx.amalg_module, bar_submodule(ctx, N2))
    rep = Report("amalgamate", info=info)
    rep.add("|R1 join J| = |R1||J|", digest, ctx.amalg_ring.size == R1.size * len(c["J"]))
    rep.add("|M join JN| = |M||JN|", digest, ctx.amalg_module.size == M.size * len(ctx.JN))
    return rep


def cmd_enumerate(args, inst):
    if args.name:
        b = inst[args.name] if args.name in inst else None
        if b is None or b.kind not in ("module", "ring"):
            raise ValidationError(args.name, "enumerate needs a module or ring name")
    else:
        b = _pick(inst, "module", None, required=False, last=True) or _pick(inst, "ring", None, last=True)
    rows = []
    if b.kind == "module":
        M = b.value
        for F in enumerate_submodules(M):
            flags = []
            if F.proper:
                flags += ["prime"] if is_prime_submodule(M, F) else []
                flags += ["2-absorbing"] if is_2absorbing_submodule(M, F) else []
            rows.append(f"{_fmt_set(_names(M, F))}  size={len(F)} {' '.join(flags)}".rstrip())
        return Report("enumerate", info={"module": b.name, "count": len(rows), "submodules": rows})
    R = b.value
    for I in enumerate_ideals(R):
        flags = []
        if I.proper:
            flags += ["prime"] if is_prime_ideal(R, I) else []
            flags += ["2-absorbing"] if is_2absorbing_ideal(R, I) else []
        rows.append(f"{_fmt_set(_names(R, I))}  size={len(I)} {' '.join(flags)}".rstrip())
    return Report("enumerate", info={"ring": b.name, "count": len(rows), "ideals": rows})


def _fmt_set(names):
    return "{" + ", ".join(names) + "}"


def cmd_localize(args, inst):
    S_b = _pick(inst, "multset", args.multset)
    S = S_b.value
    R = S.parent
    L, can = localize_ring(R, S)
    info = {
        "S": _names(R, S), "|S^-1 R|": L.size,
        "S^-1 R": [L.name(i) for i in range(L.size)],
        "ker(R -> S^-1 R)": _names(R, can.kernel()),
    }
    rep = Report("localize", info=info)
    for b in inst.of_kind("module"):
        if b.value.ring.same_as(R):
            LM, canm = localize_module(b.value, S, L)
            info[f"|S^-1 {b.name}|"] = LM.size
            info[f"ker({b.name} -> S^-1 {b.name})"] = _names(b.value, canm.kernel())
    return rep


def cmd_verify(args, inst):
    ids = list(ALL_IDS) if args.ids in ("all", "") else [i.strip() for i in args.ids.split(",")]
    if args.family:
        family, where = args.family, f"family:{args.family}"
    else:
        spec = spec_from_file(inst, args)
        family, where = [spec], spec.digest()
    report = sweep(ids, family, workers=args.workers, seed=args.seed, budget=args.budget)
    rep = Report("verify", info={"instances": report.instances,
                                 "out of scope": sorted(report.out_of_scope)})
    for sid, st in report.stats.items():
        rep.add(sid, where, not st.counterexamples, None,
                {"instances": st.instances, "cases": st.cases, "hypotheses": st.hypotheses,
                 "verified": st.verified, "counterexamples": len(st.counterexamples)},
                counterexamples=st.counterexamples)
    rep.info["summary"] = f"{len(report.counterexamples)} counterexamples / {report.instances} instances"
    return rep


def cmd_examples(args, inst):
    rep = Report("examples")
    for item in worked_examples():
        out = run_example(item)
        ok = out["matches"] and out["amalgam_consistent"]
        rep.add(out["name"], out["digest"], ok, out["witness_names"],
                {"2-absorbing": out["holds"], "amalgam 2-absorbing": out["amalgam_holds"],
                 "T3_4a counterexamples": out["T3_4a_counterexamples"]})
    return rep


COMMANDS = {
    "check": cmd_check, "amalgamate": cmd_amalgamate, "enumerate": cmd_enumerate,
    "localize": cmd_localize, "verify": cmd_verify, "examples": cmd_examples,
}


def run_subcommand(cmd, args, instance=None):
    if cmd not in COMMANDS:
        raise UnknownCommand(cmd)
    return COMMANDS[cmd](args, instance)


def _budget(text):
    if text in ("inf", "none", "unlimited"):
        return math.inf
    return int(float(text))


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--budget", type=_budget, default=None,
                        help="iteration guardrail per check ('inf' to lift it)")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized families")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--workers", type=int, default=1, help="parallel sweep workers")
    common.add_argument("--timing", action="store_true", help="include wall-clock timing")

    p = argparse.ArgumentParser(prog="amalgkit", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("check", parents=[common], help="classify a submodule or ideal")
    s.add_argument("file")
    s.add_argument("name")
    s.add_argument("--only", help="comma list of prime,2-absorbing,primary")
    s.add_argument("--strict", action="store_true", help="reject the zero ideal (ideals only)")

    for name, hlp in (("amalgamate", "build the amalgamation and report its sizes"),
                      ("localize", "localize at a multiplicative set")):
        s = sub.add_parser(name, parents=[common], help=hlp)
        s.add_argument("file")
        s.add_argument("--modhom")
        s.add_argument("--module")
        s.add_argument("--ideal")
        s.add_argument("--multset")

    s = sub.add_parser("enumerate", parents=[common], help="list submodules or ideals")
    s.add_argument("file")
    s.add_argument("name", nargs="?")

    s = sub.add_parser("verify", parents=[common], help="run catalog statements")
    s.add_argument("ids", help="comma separated statement ids, or 'all'")
    s.add_argument("file", nargs="?")
    s.add_argument("--family", help="e.g. zmod:2-12+product:2-4 or random:20")
    s.add_argument("--modhom")
    s.add_argument("--module")
    s.add_argument("--ideal")
    s.add_argument("--multset")

    sub.add_parser("examples", parents=[common], help="run the canned example suite")
    sub.add_parser("statements", parents=[common], help="list the statement catalog")
    return p


def _catalog_report():
    rep = Report("statements")
    rep.info = {sid: f"[{CATALOG[sid].kind}] {CATALOG[sid].description}"
                + (f" ({CATALOG[sid].note})" if CATALOG[sid].note else "")
                for sid in ALL_IDS}
    rep.info.update({sid: f"[out of scope] {why}" for sid, why in OUT_OF_SCOPE.items()})
    return rep


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    start = time.perf_counter()
    try:
        with budget_limit(args.budget) if args.budget is not None else nullcontext():
            if args.command == "statements":
                rep = _catalog_report()
            else:
                inst = None
                if getattr(args, "file", None):
                    inst = parse_instance_file(args.file)
                elif args.command not in ("verify", "examples"):
                    raise ValidationError("file", "an instance file is required")
                elif args.command == "verify" and not args.family:
                    raise ValidationError("file", "verify needs an instance file or --family")
                rep = run_subcommand(args.command, args, inst)
    except (ParseError, ValidationError, AlgebraError, OSError, UnknownCommand) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if args.timing:
        rep.timing = {"seconds": round(time.perf_counter() - start, 3)}
    sys.stdout.write(rep.render(args.format))
    return rep.exit_code()

