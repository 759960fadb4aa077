"""Executable statement catalog.

Each statement is a generator of :class:`Case` records over one instance.
A case carries whether the statement's hypotheses hold for it and, if so,
whether the conclusion does.  For equivalences the hypothesis is always
true and ``holds`` records that both sides agree, so both directions are
exercised on every case.
"""
from dataclasses import dataclass, field
from functools import reduce
from itertools import combinations
from typing import Callable

import numpy as np

from ..constructions import (
    amalgam_submodule,
    amalgamated_module,
    bar_submodule,
    dup_submodules,
    duplication_module,
    idealization,
    idealization_ideal,
    image_multset,
    localize_ideal,
    localize_module,
    localize_module_hom,
    localize_ring,
    localize_ring_hom,
    localize_submodule,
    projection_p_gamma,
    quotient_isomorphism,
)
from ..errors import AlgebraError, UnknownStatement
from ..module import (
    ModuleHom,
    Submodule,
    annihilator,
    colon_by_element,
    enumerate_submodules,
    ideal_times_module,
    intersect_chain,
    is_2absorbing_submodule,
    is_cyclic,
    is_multiplication_module,
    is_prime_submodule,
    is_primary_submodule,
    quotient_module,
    regular_module,
    residual_ideal,
    restrict_scalars,
    union_chain,
    zero_divisors_on_quotient,
)
from ..ring import (
    Ideal,
    enumerate_ideals,
    enumerate_mult_sets,
    identity_hom,
    ideal_generated,
    is_2absorbing_ideal,
    is_prime_ideal,
)


@dataclass
class Case:
    key: list
    hypothesis: bool
    holds: bool = True
    detail: dict = field(default_factory=dict)


@dataclass(frozen=True)
class Statement:
    id: str
    anchor: str
    description: str
    kind: str            # "iff" or "implies"
    scope: str           # "base": depends on R1, M, S only; "amalgam": whole instance
    check: Callable
    note: str = ""


CATALOG = {}

OUT_OF_SCOPE = {
    "C3_11_1": "valuation-module statements need an integral domain (infinite carrier)",
    "C3_11_2": "valuation-module statements need an integral domain (infinite carrier)",
}


def statement(id, anchor, description, kind="implies", scope="amalgam", note=""):
    def deco(fn):
        CATALOG[id] = Statement(id, anchor, description, kind, scope, fn, note)
        return fn
    return deco


def get_statement(id):
    try:
        return CATALOG[id]
    except KeyError:
        raise UnknownStatement(f"unknown statement id {id!r}") from None


def run_statement(id, inst):
    return list(get_statement(id).check(inst))


# small helpers


def _els(S):
    return [int(x) for x in S.elements]


def _v(verdict):
    return verdict.as_dict()


def _two(inst, M, F):
    return inst.tally(is_2absorbing_submodule(M, F, inst.budget))


def _two_ideal(inst, R, I):
    return inst.tally(is_2absorbing_ideal(R, I, budget=inst.budget))


def _prime(inst, M, F):
    return inst.tally(is_prime_submodule(M, F, inst.budget))


def _iff(key, left, right, **extra):
    detail = {"left": _v(left), "right": _v(right)}
    detail.update(extra)
    return Case(key, True, left.holds == right.holds, detail)


def _implies(key, hyp, conclusion=None, **extra):
    if not hyp:
        return Case(key, False, True, extra)
    detail = {"conclusion": _v(conclusion)}
    detail.update(extra)
    return Case(key, True, conclusion.holds, detail)


def _two_abs_subs(inst):
    key = "two_abs_subs"
    if key not in inst._cache:
        inst._cache[key] = [F for F in inst.proper_submodules if _two(inst, inst.M, F)]
    return inst._cache[key]


def _chains(items, max_len=3):
    """Strictly increasing chains (by inclusion) of length 1..max_len."""
    for k in range(1, max_len + 1):
        for combo in combinations(items, k):
            if all(a < b for a, b in zip(combo, combo[1:])):
                yield combo


def _mult_sets(inst):
    if inst.S is not None:
        return [inst.S]
    key = "mult_sets"
    if key not in inst._cache:
        inst._cache[key] = enumerate_mult_sets(inst.R1, 2)
    return inst._cache[key]


def _localized(inst, S):
    key = ("loc", S.mask.tobytes())
    if key not in inst._cache:
        SR, _ = localize_ring(inst.R1, S)
        SM, can = localize_module(inst.M, S, SR)
        inst._cache[key] = (SR, SM, can)
    return inst._cache[key]


def _ring_ctx(inst):
    """The amalgamation of the regular modules with ``phi = f``."""
    if "ring_ctx" not in inst._cache:
        A, B = regular_module(inst.R1), regular_module(inst.R2)
        phi = ModuleHom(inst.f, A, B, inst.f.map)
        inst._cache["ring_ctx"] = amalgamated_module(inst.f, inst.J, phi, budget=inst.budget)
    return inst._cache["ring_ctx"]


def _local_ctx(inst, S):
    key = ("local_ctx", S.mask.tobytes())
    if key not in inst._cache:
        SR1, SM, _ = _localized(inst, S)
        fS = image_multset(inst.f, S)
        SR2, _ = localize_ring(inst.R2, fS)
        fl = localize_ring_hom(inst.f, S, SR1, SR2)
        SN, _ = localize_module(inst.N, fS, SR2)
        phil = localize_module_hom(inst.phi, fl, SM, SN)
        Jl = localize_ideal(inst.J, fS, SR2)
        inst._cache[key] = amalgamated_module(fl, Jl, phil, budget=inst.budget)
    return inst._cache[key]


def _is_product_instance(inst):
    return inst.spec.m[0] == "product" and inst.M.factors is not None


def _product_mask(parts):
    return reduce(lambda a, b: np.logical_and.outer(a, b).ravel(), [P.mask for P in parts])


# residual and colon statements


@statement("P2_1", "residual of a 2-absorbing submodule by K1",
           "F 2-absorbing, K1 not inside F  =>  (F:_R K1) is a 2-absorbing ideal",
           scope="base", note="ideal reading")
def _p2_1(inst):
    two = {F.bitset for F in _two_abs_subs(inst)}
    for F in inst.proper_submodules:
        for K in inst.submodules:
            key = ["F", _els(F), "K1", _els(K)]
            hyp = F.bitset in two and not K <= F
            if not hyp:
                yield _implies(key, False)
                continue
            I = residual_ideal(F, K)
            yield _implies(key, True, _two_ideal(inst, inst.R1, I), ideal=_els(I))


@statement("P2_2", "colon of a 2-absorbing submodule by an element",
           "F 2-absorbing, r outside (F:_R M)  =>  (F:_M r) is 2-absorbing and contains F",
           scope="base")
def _p2_2(inst):
    two = {F.bitset for F in _two_abs_subs(inst)}
    for F in inst.proper_submodules:
        colon = residual_ideal(F, inst.M.whole())
        for r in range(inst.R1.size):
            key = ["F", _els(F), "r", r]
            if F.bitset not in two or r in colon:
                yield _implies(key, False)
                continue
            C = colon_by_element(F, r)
            v = _two(inst, inst.M, C)
            contains = bool(F <= C)
            case = _implies(key, True, v, colon=_els(C), contains_F=contains)
            case.holds = case.holds and contains
            yield case


# chains


@statement("P2_3a", "intersection of a chain of 2-absorbing submodules",
           "chain of 2-absorbing submodules  =>  intersection is 2-absorbing", scope="base")
def _p2_3a(inst):
    for chain in _chains(_two_abs_subs(inst)):
        meet = intersect_chain(list(chain))
        yield _implies(["chain", [_els(F) for F in chain]], True, _two(inst, inst.M, meet))


@statement("P2_3b", "union of a chain of 2-absorbing submodules",
           "chain of 2-absorbing submodules in a finitely generated module  =>  union is 2-absorbing",
           scope="base")
def _p2_3b(inst):
    for chain in _chains(_two_abs_subs(inst)):
        join = union_chain(list(chain))
        yield _implies(["chain", [_els(F) for F in chain]], True, _two(inst, inst.M, join))


# localization


@statement("P2_4a", "localization of a 2-absorbing submodule",
           "F 2-absorbing, (F:_R M) disjoint from S  =>  S^-1 F is 2-absorbing in S^-1 M",
           scope="base")
def _p2_4a(inst):
    two = {F.bitset for F in _two_abs_subs(inst)}
    for S in _mult_sets(inst):
        for F in inst.proper_submodules:
            key = ["S", _els(S), "F", _els(F)]
            colon = residual_ideal(F, inst.M.whole())
            if F.bitset not in two or (colon.mask & S.mask).any():
                yield _implies(key, False)
                continue
            SR, SM, _ = _localized(inst, S)
            SF = localize_submodule(F, S, SM)
            if not SF.proper:
                yield Case(key, True, False, {"conclusion": "S^-1 F is not proper"})
                continue
            yield _implies(key, True, _two(inst, SM, SF), localized=_els(SF))


@statement("P2_4b", "descent of 2-absorbing from a localization",
           "S^-1 F 2-absorbing in S^-1 M, Z(M/F) disjoint from S  =>  F is 2-absorbing",
           scope="base")
def _p2_4b(inst):
    for S in _mult_sets(inst):
        for F in inst.proper_submodules:
            key = ["S", _els(S), "F", _els(F)]
            if (zero_divisors_on_quotient(inst.M, F) & S.mask).any():
                yield _implies(key, False)
                continue
            SR, SM, _ = _localized(inst, S)
            SF = localize_submodule(F, S, SM)
            if not SF.proper or not _two(inst, SM, SF):
                yield _implies(key, False)
                continue
            yield _implies(key, True, _two(inst, inst.M, F))


# idealization


def _idealization(inst):
    if "RM" not in inst._cache:
        inst._cache["RM"] = idealization(inst.R1, inst.M, budget=inst.budget)
    return inst._cache["RM"]


@statement("P2_6", "2-absorbing ideals of the idealization",
           "I is a 2-absorbing ideal of R  <=>  I(+)M is a 2-absorbing ideal of R(+)M",
           kind="iff", scope="base")
def _p2_6(inst):
    RM = _idealization(inst)
    for I in inst.proper_ideals:
        big = idealization_ideal(RM, I, inst.M.whole())
        yield _iff(["I", _els(I)], _two_ideal(inst, inst.R1, I), _two_ideal(inst, RM, big))


@statement("P2_7", "2-absorbing ideals I(+)F descend to I",
           "F proper, IM inside F, I(+)F 2-absorbing in R(+)M  =>  I is 2-absorbing", scope="base")
def _p2_7(inst):
    RM = _idealization(inst)
    for I in inst.ideals:
        IM = ideal_times_module(I, inst.M)
        for F in inst.proper_submodules:
            key = ["I", _els(I), "F", _els(F)]
            if not IM <= F:
                yield _implies(key, False)
                continue
            big = idealization_ideal(RM, I, F)
            if not _two_ideal(inst, RM, big):
                yield _implies(key, False)
                continue
            yield _implies(key, True, _two_ideal(inst, inst.R1, I))


# homomorphisms and quotients


def _maps(inst):
    """Maps phi_1 out of M, all viewed over R1: the instance phi (codomain
    restricted through f) and every projection M -> M/K."""
    R1 = inst.R1
    ident = identity_hom(R1)
    out = []
    cod = restrict_scalars(inst.N, inst.f)
    out.append(("phi", ModuleHom(ident, inst.M, cod, inst.phi.map, validate=False)))
    for K in inst.submodules:
        Q, proj = quotient_module(inst.M, K)
        out.append((f"M/{_els(K)}", proj))
    return out


@statement("L3_1a", "image of a 2-absorbing submodule under a surjection",
           "phi_1 onto, Ker phi_1 inside F, F 2-absorbing  =>  phi_1(F) is 2-absorbing",
           scope="amalgam")
def _l3_1a(inst):
    two = {F.bitset for F in _two_abs_subs(inst)}
    for name, h in _maps(inst):
        ker = h.kernel()
        for F in inst.proper_submodules:
            key = ["map", name, "F", _els(F)]
            if not h.surjective or not ker <= F or F.bitset not in two:
                yield _implies(key, False)
                continue
            mask = np.zeros(h.cod.size, dtype=bool)
            mask[h.map[F.mask]] = True
            img = Submodule(h.cod, mask)
            if not img.proper:
                yield Case(key, True, False, {"conclusion": "image is not proper"})
                continue
            yield _implies(key, True, _two(inst, h.cod, img), image=_els(img))


@statement("L3_1b", "preimage of a 2-absorbing submodule",
           "N2 2-absorbing in N  =>  phi_1^-1(N2) is 2-absorbing",
           scope="amalgam", note="preimage assumed proper")
def _l3_1b(inst):
    for name, h in _maps(inst):
        for N2 in enumerate_submodules(h.cod, inst.budget):
            key = ["map", name, "N2", _els(N2)]
            if not N2.proper:
                continue
            pre = Submodule(h.dom, N2.mask[h.map], validate=False)
            if not pre.proper or not _two(inst, h.cod, N2):
                yield _implies(key, False)
                continue
            yield _implies(key, True, _two(inst, h.dom, pre), preimage=_els(pre))


@statement("L3_2", "2-absorbing passes to and from quotients",
           "K inside F:  F is 2-absorbing in M  <=>  F/K is 2-absorbing in M/K",
           kind="iff", scope="base")
def _l3_2(inst):
    for K in inst.submodules:
        Q, proj = quotient_module(inst.M, K)
        for F in inst.proper_submodules:
            if not K <= F:
                continue
            mask = np.zeros(Q.size, dtype=bool)
            mask[proj.map[F.mask]] = True
            FK = Submodule(Q, mask)
            yield _iff(["K", _els(K), "F", _els(F)], _two(inst, inst.M, F), _two(inst, Q, FK))


@statement("L3_3", "2-absorbing via the zero submodule of the quotient",
           "F is 2-absorbing in M  <=>  (0) is 2-absorbing in M/F", kind="iff", scope="base")
def _l3_3(inst):
    for F in inst.proper_submodules:
        Q, _ = quotient_module(inst.M, F)
        yield _iff(["F", _els(F)], _two(inst, inst.M, F), _two(inst, Q, Q.zero_submodule()))


# the main equivalences


@statement("T3_4a", "amalgamation of a submodule",
           "F join JN is 2-absorbing in M join JN  <=>  F is 2-absorbing in M", kind="iff")
def _t3_4a(inst):
    ctx = inst.ctx
    for F in inst.proper_submodules:
        # both sides computed from scratch for every case
        left = _two(inst, ctx.amalg_module, amalgam_submodule(ctx, F))
        right = _two(inst, inst.M, F)
        yield _iff(["F", _els(F)], left, right)


@statement("T3_4b", "submodules cut out by the second coordinate",
           "bar(N2) is 2-absorbing in M join JN  <=>  N2 is 2-absorbing in phi(M)+JN", kind="iff")
def _t3_4b(inst):
    ctx = inst.ctx
    for N2 in enumerate_submodules(ctx.target, inst.budget):
        if not N2.proper:
            continue
        left = _two(inst, ctx.amalg_module, bar_submodule(ctx, N2))
        right = _two(inst, ctx.target, N2)
        yield _iff(["N2", _els(N2)], left, right)


@statement("T3_4m", "projection and quotient map behind the main equivalences",
           "p onto with kernel phi^-1(JN) x 0, p(bar N2) = N2, p^-1(N2) = bar N2, "
           "and (M join JN)/(F join JN) -> M/F bijective")
def _t3_4m(inst):
    ctx = inst.ctx
    try:
        p, ker = projection_p_gamma(ctx)
    except AlgebraError as exc:
        yield Case(["p"], True, False, {"error": str(exc)})
        return
    yield Case(["p", "surjective"], True, bool(p.surjective))
    C = ctx.module_carrier
    want = ctx.JN.mask[ctx.phi.map[C.first]] & (C.second == ctx.N.zero)
    yield Case(["p", "kernel"], True, bool(np.array_equal(ker.mask, want)))
    for N2 in enumerate_submodules(ctx.target, inst.budget):
        bar = bar_submodule(ctx, N2)
        img = np.zeros(ctx.target.size, dtype=bool)
        img[p.map[bar.mask]] = True
        pre = N2.mask[p.map]
        ok = np.array_equal(img, N2.mask) and np.array_equal(pre, bar.mask)
        yield Case(["N2", _els(N2)], True, bool(ok),
                   {"image": bool(np.array_equal(img, N2.mask)), "preimage": bool(np.array_equal(pre, bar.mask))})
    for F in inst.submodules:
        try:
            mu, Qa, Qm = quotient_isomorphism(ctx, F)
            yield Case(["mu", _els(F)], True, Qa.size == Qm.size)
        except AlgebraError as exc:
            yield Case(["mu", _els(F)], True, False, {"error": str(exc)})


@statement("S_struct", "cardinalities and the expanded scalar formula",
           "|R1 join J| = |R1||J|, |M join JN| = |M||JN|, action = expanded formula, "
           "duplication carrier = amalgamation carrier when f = phi = id")
def _s_struct(inst):
    ctx = inst.ctx
    f, phi, J, M, N = inst.f, inst.phi, inst.J, inst.M, inst.N
    R2 = inst.R2
    yield Case(["|ring|"], True, ctx.amalg_ring.size == inst.R1.size * len(J),
               {"size": ctx.amalg_ring.size})
    yield Case(["|module|"], True, ctx.amalg_module.size == M.size * len(ctx.JN),
               {"size": ctx.amalg_module.size})
    # recompute (r, f(r)+j)(m, phi(m)+n) pointwise and decode the table entry
    rc, mc = ctx.ring_carrier, ctx.module_carrier
    bad = 0
    for a in range(ctx.amalg_ring.size):
        r, s = int(rc.first[a]), int(rc.second[a])
        j = R2.add[s, R2.neg[f.map[r]]]
        for x in range(ctx.amalg_module.size):
            m, y = int(mc.first[x]), int(mc.second[x])
            n = N.add[y, N.neg[phi.map[m]]]
            rm = M.act[r, m]
            second = N.add[N.add[phi.map[rm], N.act[f.map[r], n]],
                           N.add[N.act[j, phi.map[m]], N.act[j, n]]]
            z = ctx.amalg_module.act[a, x]
            bad += int(mc.first[z] != rm or mc.second[z] != second)
    yield Case(["expanded action"], True, bad == 0, {"mismatches": bad})
    if inst.spec.f == "identity" and inst.spec.phi == "identity":
        JM = ctx.JN.mask
        pairs = {(int(a), int(b)) for a, b in zip(mc.first, mc.second)}
        dup = {(a, b) for a in range(M.size) for b in range(M.size) if JM[M.add[a, M.neg[b]]]}
        yield Case(["duplication carrier"], True, pairs == dup)


@statement("C3_5", "duplication special case",
           "F join J 2-absorbing <=> F 2-absorbing; bar N2 2-absorbing <=> N2 2-absorbing",
           kind="iff")
def _c3_5(inst):
    if inst.spec.f != "identity" or inst.spec.phi != "identity":
        return
    dup = duplication_module(inst.R1, inst.J, inst.M, budget=inst.budget)
    for F in inst.proper_submodules:
        parts = dup_submodules(dup, F)
        if parts.failures:
            yield Case(["F", _els(F)], True, False, {"error": str(parts.failures)})
            continue
        yield _iff(["F", _els(F)], _two(inst, dup.amalg_module, parts.bowtie), _two(inst, inst.M, F))
        yield _iff(["N2", _els(F)], _two(inst, dup.amalg_module, parts.bar), _two(inst, inst.M, F))


# corollaries built on the main equivalence


def _amalg_two(inst, F):
    return _two(inst, inst.ctx.amalg_module, amalgam_submodule(inst.ctx, F))


def _prime_subs(inst):
    if "prime_subs" not in inst._cache:
        inst._cache["prime_subs"] = [F for F in inst.proper_submodules if _prime(inst, inst.M, F)]
    return inst._cache["prime_subs"]


@statement("C3_8_1", "intersection of two distinct primes",
           "F = P1 meet P2 for distinct prime submodules  =>  F join JN is 2-absorbing")
def _c3_8_1(inst):
    for P1, P2 in combinations(_prime_subs(inst), 2):
        F = Submodule(inst.M, P1.mask & P2.mask, validate=False)
        yield _implies(["P1", _els(P1), "P2", _els(P2)], True, _amalg_two(inst, F))


def _cyclic(inst):
    if "cyclic" not in inst._cache:
        inst._cache["cyclic"] = is_cyclic(inst.M).holds
    return inst._cache["cyclic"]


@statement("C3_8_2", "cyclic modules with 2-absorbing residual",
           "M cyclic, (F:_R M) a 2-absorbing ideal  =>  F join JN is 2-absorbing")
def _c3_8_2(inst):
    for F in inst.proper_submodules:
        key = ["F", _els(F)]
        colon = residual_ideal(F, inst.M.whole())
        if not _cyclic(inst) or not _two_ideal(inst, inst.R1, colon):
            yield _implies(key, False)
            continue
        yield _implies(key, True, _amalg_two(inst, F))


@statement("C3_8_3", "primary submodules of cyclic modules",
           "M cyclic, F P-primary with P prime and P^2 M inside F  =>  F join JN is 2-absorbing",
           note="(pM)^2 read as P^2 M")
def _c3_8_3(inst):
    R = inst.R1
    for F in inst.proper_submodules:
        key = ["F", _els(F)]
        pv = inst.tally(is_primary_submodule(inst.M, F, inst.budget))
        if not _cyclic(inst) or not pv:
            yield _implies(key, False)
            continue
        P = pv.extra["P"]
        if not P.proper or not is_prime_ideal(R, P):
            yield _implies(key, False)
            continue
        P2 = ideal_generated(R, np.unique(R.mul[np.ix_(P.elements, P.elements)]))
        if not ideal_times_module(P2, inst.M) <= F:
            yield _implies(key, False)
            continue
        yield _implies(key, True, _amalg_two(inst, F), P=_els(P))


@statement("C3_9_1", "amalgamated residual ideal",
           "F 2-absorbing, K1 not inside F  =>  (F:_R K1) join J is 2-absorbing in R1 join J",
           note="ideal reading: ring-level amalgamation of the regular modules")
def _c3_9_1(inst, whole_only=False):
    two = {F.bitset for F in _two_abs_subs(inst)}
    rctx = _ring_ctx(inst)
    base = rctx.M
    seen = {}
    for F in inst.proper_submodules:
        Ks = [inst.M.whole()] if whole_only else inst.submodules
        for K in Ks:
            key = ["F", _els(F), "K1", _els(K)]
            if F.bitset not in two or K <= F:
                yield _implies(key, False)
                continue
            I = residual_ideal(F, K)
            if I.bitset not in seen:
                sub = Submodule(base, I.mask, validate=False)
                seen[I.bitset] = _two(inst, rctx.amalg_module, amalgam_submodule(rctx, sub))
            yield _implies(key, True, seen[I.bitset], ideal=_els(I))


@statement("C3_9_2", "amalgamated residual of the whole module",
           "F 2-absorbing, M not inside F  =>  (F:_R M) join J is 2-absorbing in R1 join J",
           note="ideal reading: ring-level amalgamation of the regular modules")
def _c3_9_2(inst):
    return _c3_9_1(inst, whole_only=True)


@statement("C3_9_3", "amalgamated colon by an element",
           "F 2-absorbing, r outside (F:_R M)  =>  (F:_M r) join JN is 2-absorbing")
def _c3_9_3(inst):
    two = {F.bitset for F in _two_abs_subs(inst)}
    for F in inst.proper_submodules:
        colon = residual_ideal(F, inst.M.whole())
        for r in range(inst.R1.size):
            key = ["F", _els(F), "r", r]
            if F.bitset not in two or r in colon:
                yield _implies(key, False)
                continue
            yield _implies(key, True, _amalg_two(inst, colon_by_element(F, r)))


@statement("C3_9_4", "amalgamated chain intersection",
           "chain of 2-absorbing submodules with 2-absorbing intersection F  =>  F join JN is 2-absorbing")
def _c3_9_4(inst):
    for chain in _chains(_two_abs_subs(inst)):
        F = intersect_chain(list(chain))
        key = ["chain", [_els(C) for C in chain]]
        if not _two(inst, inst.M, F):
            yield _implies(key, False)
            continue
        yield _implies(key, True, _amalg_two(inst, F))


@statement("C3_9_5", "amalgamated chain union",
           "chain of 2-absorbing submodules with 2-absorbing union F  =>  F join JN is 2-absorbing")
def _c3_9_5(inst):
    for chain in _chains(_two_abs_subs(inst)):
        F = union_chain(list(chain))
        key = ["chain", [_els(C) for C in chain]]
        if not _two(inst, inst.M, F):
            yield _implies(key, False)
            continue
        yield _implies(key, True, _amalg_two(inst, F))


@statement("C3_9_6", "amalgamation of a localized 2-absorbing submodule",
           "F 2-absorbing, (F:_R M) disjoint from S  =>  S^-1 F join is 2-absorbing in the "
           "amalgamation of S^-1 M and f(S)^-1 N",
           note="localized instance: S^-1 R1, f(S)^-1 R2, induced f, J, phi")
def _c3_9_6(inst):
    two = {F.bitset for F in _two_abs_subs(inst)}
    for S in _mult_sets(inst):
        for F in inst.proper_submodules:
            key = ["S", _els(S), "F", _els(F)]
            colon = residual_ideal(F, inst.M.whole())
            if F.bitset not in two or (colon.mask & S.mask).any():
                yield _implies(key, False)
                continue
            lctx = _local_ctx(inst, S)
            SF = localize_submodule(F, S, lctx.M)
            if not SF.proper:
                yield Case(key, True, False, {"conclusion": "S^-1 F is not proper"})
                continue
            v = _two(inst, lctx.amalg_module, amalgam_submodule(lctx, SF))
            yield _implies(key, True, v)


@statement("C3_9_7", "descent from a localization, amalgamated",
           "S^-1 F 2-absorbing, Z(M/F) disjoint from S  =>  F join JN is 2-absorbing")
def _c3_9_7(inst):
    for S in _mult_sets(inst):
        for F in inst.proper_submodules:
            key = ["S", _els(S), "F", _els(F)]
            if (zero_divisors_on_quotient(inst.M, F) & S.mask).any():
                yield _implies(key, False)
                continue
            SR, SM, _ = _localized(inst, S)
            SF = localize_submodule(F, S, SM)
            if not SF.proper or not _two(inst, SM, SF):
                yield _implies(key, False)
                continue
            yield _implies(key, True, _amalg_two(inst, F))


def _multiplication(inst):
    if "mult" not in inst._cache:
        inst._cache["mult"] = is_multiplication_module(inst.M, inst.budget).holds
    return inst._cache["mult"]


@statement("C3_10_1", "multiplication modules with 2-absorbing residual",
           "M multiplication, (F:_R M) a 2-absorbing ideal  =>  F join JN is 2-absorbing")
def _c3_10_1(inst):
    for F in inst.proper_submodules:
        key = ["F", _els(F)]
        colon = residual_ideal(F, inst.M.whole())
        if not _multiplication(inst) or not _two_ideal(inst, inst.R1, colon):
            yield _implies(key, False)
            continue
        yield _implies(key, True, _amalg_two(inst, F))


@statement("C3_10_2", "F = IM in a multiplication module",
           "M multiplication, I 2-absorbing with ann(M) inside I, F = IM  =>  F join JN is 2-absorbing")
def _c3_10_2(inst):
    ann = annihilator(inst.M)
    for I in inst.proper_ideals:
        key = ["I", _els(I)]
        if not _multiplication(inst) or not ann <= I or not _two_ideal(inst, inst.R1, I):
            yield _implies(key, False)
            continue
        F = ideal_times_module(I, inst.M)
        if not F.proper:
            yield Case(key, True, False, {"conclusion": "IM is not proper"})
            continue
        yield _implies(key, True, _amalg_two(inst, F), F=_els(F))


def _product_cases(inst, pairs_of_primes, restricted=False):
    if not _is_product_instance(inst):
        return
    parts = inst.M.factors
    subs = [enumerate_submodules(P, inst.budget) for P in parts]
    info = []
    for P, Ss in zip(parts, subs):
        row = []
        for F in Ss:
            two = F.proper and bool(_two(inst, P, F))
            prime = F.proper and bool(_prime(inst, P, F))
            row.append((F, two, prime))
        info.append(row)

    def walk(i, chosen):
        if i == len(info):
            yield chosen
            return
        for item in info[i]:
            yield from walk(i + 1, chosen + [item])

    for chosen in walk(0, []):
        mask = _product_mask([F for F, _, _ in chosen])
        key = ["F", [_els(F) for F, _, _ in chosen]]
        if mask.all():
            continue
        whole = [bool(F.mask.all()) for F, _, _ in chosen]
        if restricted:
            # every factor is whole except one 2-absorbing factor or two prime ones
            idx = [k for k, w in enumerate(whole) if not w]
            hyp = (len(idx) == 1 and chosen[idx[0]][1]) or \
                  (len(idx) == 2 and all(chosen[k][2] for k in idx))
        else:
            any_two = any(t for _, t, _ in chosen)
            primes = [k for k, (_, _, p) in enumerate(chosen) if p]
            hyp = any_two or (len(primes) >= 2 if pairs_of_primes else bool(primes))
        if not hyp:
            yield _implies(key, False)
            continue
        F = Submodule(inst.M, mask, validate=False)
        yield _implies(key, True, _amalg_two(inst, F),
                       two_absorbing=[t for _, t, _ in chosen], prime=[p for _, _, p in chosen])


@statement("C3_10_3", "products of two modules",
           "F1 or F2 2-absorbing, or F1 or F2 prime  =>  (F1 x F2) join JN is 2-absorbing",
           note="checked as stated")
def _c3_10_3(inst):
    if _is_product_instance(inst) and len(inst.M.factors) == 2:
        yield from _product_cases(inst, pairs_of_primes=False)


@statement("C3_10_4", "products of n modules",
           "some F_k 2-absorbing, or two distinct F_k prime  =>  (F_1 x ... x F_n) join JN is 2-absorbing",
           note="checked as stated")
def _c3_10_4(inst):
    yield from _product_cases(inst, pairs_of_primes=True)


@statement("C3_10_3r", "products of two modules, other factor whole",
           "F1 x M2 or M1 x F2 with the proper factor 2-absorbing, or F1 x F2 with both prime  "
           "=>  F join JN is 2-absorbing")
def _c3_10_3r(inst):
    if _is_product_instance(inst) and len(inst.M.factors) == 2:
        yield from _product_cases(inst, pairs_of_primes=True, restricted=True)


@statement("C3_10_4r", "products of n modules, other factors whole",
           "one 2-absorbing factor or two prime factors, all other factors whole  "
           "=>  F join JN is 2-absorbing")
def _c3_10_4r(inst):
    yield from _product_cases(inst, pairs_of_primes=True, restricted=True)


# auxiliary hierarchy checks


def _hierarchy_objects(inst):
    rings = [("R1", inst.R1)]
    modules = [("M", inst.M)]
    ctx = inst.ctx
    rings.append(("R1 join J", ctx.amalg_ring))
    modules.append(("M join JN", ctx.amalg_module))
    modules.append(("phi(M)+JN", ctx.target))
    return rings, modules


@statement("H_prime", "prime implies 2-absorbing",
           "every prime ideal and every prime submodule is 2-absorbing")
def _h_prime(inst):
    rings, modules = _hierarchy_objects(inst)
    for name, R in rings:
        for I in enumerate_ideals(R, inst.budget):
            if not I.proper:
                continue
            if not is_prime_ideal(R, I, inst.budget):
                yield _implies([name, _els(I)], False)
                continue
            yield _implies([name, _els(I)], True, _two_ideal(inst, R, I))
    for name, M in modules:
        for F in enumerate_submodules(M, inst.budget):
            if not F.proper:
                continue
            if not _prime(inst, M, F):
                yield _implies([name, _els(F)], False)
                continue
            yield _implies([name, _els(F)], True, _two(inst, M, F))


@statement("H_cyclic", "cyclic modules and their residual ideals",
           "M cyclic:  F 2-absorbing  <=>  (F:_R M) a 2-absorbing ideal", kind="iff")
def _h_cyclic(inst):
    _, modules = _hierarchy_objects(inst)
    for K in inst.submodules:
        if K.proper:
            modules.append((f"M/{_els(K)}", quotient_module(inst.M, K)[0]))
    for name, M in modules:
        if not is_cyclic(M):
            continue
        for F in enumerate_submodules(M, inst.budget):
            if not F.proper:
                continue
            colon = residual_ideal(F, M.whole())
            yield _iff([name, _els(F)], _two(inst, M, F), _two_ideal(inst, M.ring, colon))


# the ids named in the catalog contract, in report order
CORE_IDS = [
    "P2_1", "P2_2", "P2_3a", "P2_3b", "P2_4a", "P2_4b", "P2_6", "P2_7",
    "L3_1a", "L3_1b", "L3_2", "L3_3", "T3_4a", "T3_4b", "C3_5",
    "C3_8_1", "C3_8_2", "C3_8_3",
    "C3_9_1", "C3_9_2", "C3_9_3", "C3_9_4", "C3_9_5", "C3_9_6", "C3_9_7",
    "C3_10_1", "C3_10_2", "C3_10_3", "C3_10_4",
]
AUX_IDS = ["T3_4m", "S_struct", "H_prime", "H_cyclic", "C3_10_3r", "C3_10_4r"]
ALL_IDS = CORE_IDS + AUX_IDS
