"""Property tests over randomly drawn small rings, modules and subsets."""
import json

import numpy as np
from hypothesis import assume, given
from hypothesis import strategies as st

import oracle
from amalgkit.cli.report import Record, Report
from amalgkit.constructions import amalgam_submodule, localize_ring, quotient_isomorphism
from amalgkit.errors import NotASubmodule
from amalgkit.module import (Submodule, enumerate_submodules, is_2absorbing_submodule,
                             is_prime_submodule, regular_module, residual_ideal)
from amalgkit.ring import (enumerate_ideals, is_2absorbing_ideal, is_prime_ideal,
                           mk_zmod, mult_closure, product_ring, quotient_ring)
from amalgkit.verifier import Instance, random_instance, verify_statement

small_n = st.integers(2, 12)
ring_mods = st.one_of(small_n.map(lambda n: (n,)),
                      st.tuples(st.integers(2, 4), st.integers(2, 3)))


def lib_ring(mods):
    return mk_zmod(mods[0]) if len(mods) == 1 else product_ring(*[mk_zmod(n) for n in mods])


@given(ring_mods, st.data())
def test_2absorbing_matches_oracle(mods, data):
    R = lib_ring(mods)
    M = regular_module(R)
    subs = [F for F in enumerate_submodules(M) if F.proper]
    F = data.draw(st.sampled_from(subs))
    R_o = oracle.ORing(*mods)
    S = frozenset(R_o.elems[i] for i in F)
    v = is_2absorbing_submodule(M, F)
    assert (None if v else v.witness) == oracle.two_absorbing(oracle.regular(R_o), S)
    v = is_2absorbing_ideal(R, F.elements)
    assert (None if v else v.witness) == oracle.two_absorbing_ideal(R_o, S)


@given(ring_mods)
def test_prime_implies_2absorbing(mods):
    R = lib_ring(mods)
    M = regular_module(R)
    for F in enumerate_submodules(M):
        if F.proper and is_prime_submodule(M, F):
            assert is_2absorbing_submodule(M, F)
        if F.proper and is_prime_ideal(R, F.elements):
            assert is_2absorbing_ideal(R, F.elements)


@given(small_n, st.data())
def test_witness_violates_definition(n, data):
    R = mk_zmod(n)
    M = regular_module(R)
    F = data.draw(st.sampled_from([F for F in enumerate_submodules(M) if F.proper]))
    v = is_2absorbing_submodule(M, F)
    assert (v.witness is None) == v.holds
    if not v:
        a, b, m = v.witness
        ab = R.mul[a, b]
        colon = residual_ideal(F, M.whole())
        assert M.act[ab, m] in F
        assert ab not in colon and M.act[a, m] not in F and M.act[b, m] not in F


@given(small_n, st.sets(st.integers(0, 11), max_size=6))
def test_submodule_validation_matches_closure(n, raw):
    members = {x % n for x in raw} | {0}
    M = regular_module(mk_zmod(n))
    O = oracle.regular(oracle.ORing(n))
    closed = oracle.closed(O, frozenset((x,) for x in members))
    try:
        Submodule(M, sorted(members))
        accepted = True
    except NotASubmodule:
        accepted = False
    assert accepted == closed


@given(ring_mods, st.data())
def test_quotient_ring_size(mods, data):
    R = lib_ring(mods)
    I = data.draw(st.sampled_from(enumerate_ideals(R)))
    Q, proj = quotient_ring(R, I)
    assert Q.size * len(I) == R.size
    assert proj.kernel() == I


@given(small_n, st.data())
def test_amalgamation_cardinality_and_quotient_map(n, data):
    R = mk_zmod(n)
    J = data.draw(st.sampled_from(enumerate_ideals(R)))
    from amalgkit.verifier import InstanceSpec
    ctx = Instance(InstanceSpec(r1=("zmod", n), J=J.elements)).ctx
    assert ctx.amalg_ring.size == n * len(J)
    assert ctx.amalg_module.size == n * len(ctx.JN)
    F = data.draw(st.sampled_from(enumerate_submodules(ctx.M)))
    mu, Qa, Qm = quotient_isomorphism(ctx, F)
    assert mu.injective and mu.surjective
    if F.proper:
        left = is_2absorbing_submodule(ctx.amalg_module, amalgam_submodule(ctx, F))
        assert left.holds == is_2absorbing_submodule(ctx.M, F).holds


@given(small_n, st.lists(st.integers(0, 11), max_size=2))
def test_localization_matches_oracle(n, gens):
    R = mk_zmod(n)
    S = mult_closure(R, [g % n for g in gens])
    L, can = localize_ring(R, S)
    assert L.size == oracle.localization_size(n, list(S.elements))
    # canonical map is a validated ring hom; it kills exactly the elements sending to 0
    ker = can.kernel().elements
    assert all(any(R.mul[u, x] == 0 for u in S) for x in ker)


@given(st.integers(0, 500))
def test_random_instances_satisfy_main_equivalences(seed):
    spec = random_instance(seed, {"max_ring": 6, "max_module": 6})
    for sid in ("T3_4a", "T3_4b", "T3_4m", "S_struct"):
        assert verify_statement(sid, spec).ok


records = st.builds(
    Record,
    id=st.text(min_size=1, max_size=8),
    instance=st.text(max_size=12),
    verdict=st.booleans(),
    witness=st.one_of(st.none(), st.dictionaries(st.sampled_from("abm"), st.text(max_size=4))),
    counts=st.dictionaries(st.text(max_size=5), st.integers(0, 99), max_size=3),
)


@given(st.lists(records, max_size=5))
def test_report_round_trip(recs):
    rep = Report("verify", recs, {"family": "zmod:2-4"})
    again = Report.from_json(rep.to_json())
    assert again.verdict_data() == rep.verdict_data()
    assert again.exit_code() == rep.exit_code() == (0 if all(r.verdict for r in recs) else 1)
    assert again.to_json() == rep.to_json()
    json.loads(rep.to_json())
