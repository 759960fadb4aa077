import math

import numpy as np
import pytest

import oracle
from amalgkit.constructions import (amalgam_submodule, amalgamated_module, amalgamated_ring,
                                    bar_submodule, dup_submodules, duplication_module,
                                    first_projection, idealization, idealization_ideal,
                                    image_multset, localize_ideal, localize_module,
                                    localize_module_hom, localize_ring, localize_ring_hom,
                                    localize_submodule, projection_p_gamma,
                                    quotient_isomorphism)
from amalgkit.errors import (BudgetExceeded, IMNotInF, IncompatibleHom, SNotMultClosed)
from amalgkit.module import (ModuleHom, Submodule, enumerate_module_homs, enumerate_submodules,
                             is_2absorbing_submodule, regular_module)
from amalgkit.ring import (Ideal, MultSet, RingHom, enumerate_ideals, identity_hom,
                           is_2absorbing_ideal, mk_zmod, product_ring)


def identity_ctx(n, J):
    R = mk_zmod(n)
    M = regular_module(R)
    f = identity_hom(R)
    phi = ModuleHom(f, M, M, np.arange(n))
    return amalgamated_module(f, Ideal(R, J), phi)


@pytest.mark.parametrize("n", [4, 6, 8, 12])
def test_amalgamation_carrier_matches_oracle(n):
    R_o = oracle.ORing(n)
    for J in enumerate_ideals(mk_zmod(n)):
        ctx = identity_ctx(n, J.elements)
        Jo = {R_o.elems[j] for j in J}
        ring_pairs, mod_pairs, JM = oracle.amalgamation(R_o, Jo, oracle.regular(R_o))
        assert ctx.ring_carrier.members == ring_pairs
        assert ctx.module_carrier.members == mod_pairs
        assert ctx.amalg_ring.size == n * len(J)
        assert ctx.amalg_module.size == n * len(JM)


def test_z6_amalgamation_along_three():
    ctx = identity_ctx(6, [0, 3])
    assert ctx.amalg_ring.size == 12 and ctx.amalg_module.size == 12
    assert ctx.target.size == 6 and ctx.subring.size == 6
    assert ctx.amalg_module.name(1) == "(0,3)"
    F = amalgam_submodule(ctx, [0, 2, 4])
    assert F.names() == ["(0,0)", "(0,3)", "(2,2)", "(2,5)", "(4,1)", "(4,4)"]
    assert is_2absorbing_submodule(ctx.amalg_module, F)


def test_amalgamation_along_a_surjection():
    R6, R3 = mk_zmod(6), mk_zmod(3)
    f = RingHom(R6, R3, [i % 3 for i in range(6)])
    M, N = regular_module(R6), regular_module(R3)
    phi = next(h for h in enumerate_module_homs(f, M, N) if h.map[1] == 1)
    ctx = amalgamated_module(f, Ideal(R3, [0, 1, 2]), phi)
    # brute-force pairs (r, f(r) + j)
    want = sorted({(r, (r + j) % 3) for r in range(6) for j in range(3)})
    assert ctx.ring_carrier.members == want
    assert ctx.amalg_ring.size == 18 and ctx.amalg_module.size == 18
    p, ker = projection_p_gamma(ctx)
    assert p.surjective
    # phi^-1(JN) x {0}: every m paired with 0
    assert sorted(ctx.module_carrier.members[i] for i in ker) == [(m, 0) for m in range(6)]


def test_incompatible_phi():
    R = mk_zmod(4)
    M = regular_module(R)
    f = RingHom(R, mk_zmod(2), [0, 1, 0, 1])
    with pytest.raises(IncompatibleHom):
        amalgamated_module(f, [0], ModuleHom(identity_hom(R), M, M, np.arange(4)))


def test_bar_and_projection_round_trip():
    ctx = identity_ctx(12, [0, 4, 8])
    p, _ = projection_p_gamma(ctx)
    for N2 in enumerate_submodules(ctx.target):
        bar = bar_submodule(ctx, N2)
        assert set(p.map[bar.mask].tolist()) == set(N2.elements)
        assert np.array_equal(N2.mask[p.map], bar.mask)


def test_quotient_isomorphism():
    ctx = identity_ctx(12, [0, 6])
    for F in enumerate_submodules(ctx.M):
        mu, Qa, Qm = quotient_isomorphism(ctx, F)
        assert Qa.size == Qm.size == 12 // len(F)
        assert mu.injective and mu.surjective
    assert first_projection(ctx).surjective


def test_large_amalgamation_needs_budget():
    R = mk_zmod(30)
    M = regular_module(R)
    f = identity_hom(R)
    phi = ModuleHom(f, M, M, np.arange(30))
    ctx = amalgamated_module(f, Ideal(R, range(30)), phi, validate=False)
    zero = amalgam_submodule(ctx, [0])
    with pytest.raises(BudgetExceeded):
        is_2absorbing_submodule(ctx.amalg_module, zero)
    v = is_2absorbing_submodule(ctx.amalg_module, zero, budget=math.inf)
    assert not v


def test_duplication():
    R = mk_zmod(8)
    M = regular_module(R)
    ctx = duplication_module(R, Ideal(R, [0, 4]), M)
    assert ctx.amalg_module.size == 16
    assert all((a - b) % 8 in (0, 4) for a, b in ctx.module_carrier.members)
    sub = dup_submodules(ctx, [0, 2, 4, 6])
    assert not sub.failures
    assert len(sub.bowtie) == len(sub.bar) == 8
    assert is_2absorbing_submodule(ctx.amalg_module, sub.bowtie)


def test_idealization():
    R = mk_zmod(4)
    RM = idealization(R, regular_module(R))
    assert RM.size == 16
    x = RM.carrier.index_of((0, 1))
    assert RM.mul[x, x] == RM.zero
    I = idealization_ideal(RM, [0, 2], [0, 2])
    assert len(I) == 4
    assert is_2absorbing_ideal(RM, I)
    with pytest.raises(IMNotInF):
        idealization_ideal(RM, [0, 2], [0])
    with pytest.raises(IncompatibleHom):
        idealization(R, regular_module(mk_zmod(2)))


@pytest.mark.parametrize("n,S", [(12, [1, 2, 4, 8]), (12, [1, 3, 9]), (6, [1, 2, 4]),
                                 (8, [1, 3, 5, 7]), (10, [1, 5]), (6, [0, 1])])
def test_localization_sizes_match_oracle(n, S):
    L, can = localize_ring(mk_zmod(n), S)
    assert L.size == oracle.localization_size(n, S)


def test_localization_of_z12():
    R = mk_zmod(12)
    L, can = localize_ring(R, [1, 2, 4, 8])
    assert L.size == 3
    assert can.kernel().elements == (0, 3, 6, 9)
    M = regular_module(R)
    LM, canm = localize_module(M, [1, 2, 4, 8], SR=L)
    assert LM.size == 3
    F = localize_submodule(Submodule(M, [0, 6]), [1, 2, 4, 8], LM)
    assert F.elements == (0,)
    assert localize_ideal(Ideal(R, [0, 2, 4, 6, 8, 10]), [1, 2, 4, 8], L).proper is False


def test_localization_collapses_when_zero_in_s():
    L, _ = localize_ring(mk_zmod(6), [0, 1])
    assert L.collapsed and L.size == 1


def test_localization_rejects_non_mult_closed():
    with pytest.raises(SNotMultClosed):
        localize_ring(mk_zmod(12), [1, 2])


def test_localized_homs():
    R6, R3 = mk_zmod(6), mk_zmod(3)
    f = RingHom(R6, R3, [i % 3 for i in range(6)])
    S = MultSet(R6, [1, 2, 4])
    fS = image_multset(f, S)
    assert fS.elements == (1, 2)
    SR1, _ = localize_ring(R6, S)
    SR2, _ = localize_ring(R3, fS)
    fl = localize_ring_hom(f, S, SR1, SR2)
    assert SR1.size == 3 and fl.surjective
    M, N = regular_module(R6), regular_module(R3)
    phi = next(h for h in enumerate_module_homs(f, M, N) if h.map[1] == 1)
    SM, _ = localize_module(M, S, SR1)
    SN, _ = localize_module(N, fS, SR2)
    phil = localize_module_hom(phi, fl, SM, SN)
    assert phil.surjective


def test_product_ring_amalgamation_sizes():
    P = product_ring(mk_zmod(2), mk_zmod(4))
    M = regular_module(P)
    f = identity_hom(P)
    phi = ModuleHom(f, M, M, np.arange(P.size))
    for J in enumerate_ideals(P):
        ctx = amalgamated_module(f, J, phi)
        assert ctx.amalg_ring.size == 8 * len(J)
        assert ctx.amalg_module.size == 8 * len(ctx.JN)
        assert amalgamated_ring(f, J).size == ctx.amalg_ring.size
