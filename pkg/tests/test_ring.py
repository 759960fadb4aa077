import numpy as np
import pytest

import oracle
from amalgkit.errors import (BadElement, BudgetExceeded, InvalidSize, NotAHom, NotAnIdeal,
                             NotARing, NotProper, SNotMultClosed, ZeroIdealRejected)
from amalgkit.ring import (FiniteRing, Ideal, MultSet, RingHom, enumerate_ideals,
                           enumerate_mult_sets, enumerate_ring_homs, first_true, identity_hom,
                           ideal_generated, is_2absorbing_ideal, is_prime_ideal, mk_zmod,
                           mult_closure, product_ring, quotient_ring, radical_ideal,
                           subring_f_plus_J)


def idx(R_o, S):
    return sorted(R_o.index[x] for x in S)


@pytest.mark.parametrize("n", range(2, 13))
def test_zmod_ideals_match_oracle(n):
    R = mk_zmod(n)
    got = sorted(I.elements for I in enumerate_ideals(R))
    R_o = oracle.ORing(n)
    want = sorted(tuple(idx(R_o, S)) for S in oracle.ideals(R_o))
    assert got == want
    # one ideal per divisor
    assert len(got) == sum(1 for d in range(1, n + 1) if n % d == 0)


def test_ideals_of_z12_sorted_by_size_then_bitset():
    got = [I.elements for I in enumerate_ideals(mk_zmod(12))]
    assert got == [(0,), (0, 6), (0, 4, 8), (0, 3, 6, 9), (0, 2, 4, 6, 8, 10), tuple(range(12))]


@pytest.mark.parametrize("mods", [(2, 2), (2, 3), (2, 4), (3, 4)])
def test_product_ideals_match_oracle(mods):
    R = product_ring(*[mk_zmod(n) for n in mods])
    R_o = oracle.ORing(*mods)
    got = sorted(I.elements for I in enumerate_ideals(R))
    assert got == sorted(tuple(idx(R_o, S)) for S in oracle.ideals(R_o))


def test_product_ring_names_and_tables():
    P = product_ring(mk_zmod(2), mk_zmod(3))
    assert P.element_names == ["(0,0)", "(0,1)", "(0,2)", "(1,0)", "(1,1)", "(1,2)"]
    assert P.index_of("(1, 2)") == 5 and P.index_of(4) == 4
    assert P.one == 4 and P.zero == 0
    # (1,2) * (1,2) = (1,1)
    assert P.mul[5, 5] == 4


def test_zmod_rejects_small_n():
    with pytest.raises(InvalidSize):
        mk_zmod(1)


def test_bad_table_reports_axiom_and_witness():
    add = np.array([[0, 1], [1, 0]])
    mul = np.array([[0, 0], [1, 1]])  # not commutative
    with pytest.raises(NotARing) as e:
        FiniteRing(add, mul)
    assert e.value.axiom in ("multiplicative identity", "multiplicative commutativity")
    assert e.value.witness is not None


def test_index_of_rejects_unknown():
    with pytest.raises(BadElement):
        mk_zmod(5).index_of(7)


def test_quotient_ring():
    R = mk_zmod(12)
    Q, proj = quotient_ring(R, Ideal(R, [0, 4, 8]))
    assert Q.size == 4
    assert proj.kernel().elements == (0, 4, 8)
    assert proj.surjective


def test_ideal_generated_and_validation():
    R = mk_zmod(12)
    assert ideal_generated(R, [8]).elements == (0, 4, 8)
    assert ideal_generated(R, [8, 6]).elements == (0, 2, 4, 6, 8, 10)
    with pytest.raises(NotAnIdeal) as e:
        Ideal(R, [0, 5])
    assert e.value.witness == (5, 5)


def test_hom_validation_witness_is_lex_first():
    with pytest.raises(NotAHom) as e:
        RingHom(mk_zmod(6), mk_zmod(4), [i % 4 for i in range(6)])
    assert e.value.axiom == "additive"
    assert e.value.witness == (1, 5)


def test_enumerate_ring_homs_counts():
    assert len(enumerate_ring_homs(mk_zmod(6), mk_zmod(3))) == 1
    assert len(enumerate_ring_homs(mk_zmod(4), mk_zmod(6))) == 0
    Z2 = mk_zmod(2)
    homs = enumerate_ring_homs(product_ring(Z2, Z2), Z2)
    assert sorted(tuple(h.map) for h in homs) == [(0, 0, 1, 1), (0, 1, 0, 1)]


def test_prime_and_2absorbing_ideal_witnesses():
    R = mk_zmod(12)
    zero = Ideal(R, [0])
    v = is_prime_ideal(R, zero)
    assert not v and v.witness == (2, 6) and v.labelled() == {"a": 2, "b": 6}
    v = is_2absorbing_ideal(R, zero)
    assert not v and v.witness == (2, 2, 3)
    assert is_2absorbing_ideal(R, Ideal(R, [0, 6]))
    R8 = mk_zmod(8)
    assert is_2absorbing_ideal(R8, Ideal(R8, [0])).witness == (2, 2, 2)


@pytest.mark.parametrize("n", [4, 6, 8, 9, 12])
def test_ideal_predicates_match_oracle(n):
    R = mk_zmod(n)
    R_o = oracle.ORing(n)
    for I in enumerate_ideals(R):
        if not I.proper:
            continue
        S = frozenset(R_o.elems[i] for i in I)
        v = is_2absorbing_ideal(R, I)
        assert (None if v else v.witness) == oracle.two_absorbing_ideal(R_o, S)
        v = is_prime_ideal(R, I)
        assert (None if v else v.witness) == oracle.prime_ideal(R_o, S)


def test_predicates_refuse_improper_and_strict_zero():
    R = mk_zmod(6)
    with pytest.raises(NotProper):
        is_prime_ideal(R, Ideal(R, range(6)))
    with pytest.raises(ZeroIdealRejected):
        is_2absorbing_ideal(R, Ideal(R, [0]), strict_nonzero=True)
    assert is_2absorbing_ideal(R, Ideal(R, [0]))


def test_budget_guard():
    R = mk_zmod(12)
    with pytest.raises(BudgetExceeded):
        is_2absorbing_ideal(R, Ideal(R, [0]), budget=100)
    assert is_2absorbing_ideal(R, Ideal(R, [0, 6]), budget=12**3)


def test_radical():
    R = mk_zmod(12)
    assert radical_ideal(R, Ideal(R, [0])).elements == (0, 6)
    assert radical_ideal(R, Ideal(R, [0, 4, 8])).elements == (0, 2, 4, 6, 8, 10)


def test_mult_sets():
    R = mk_zmod(12)
    assert mult_closure(R, [2]).elements == (1, 2, 4, 8)
    assert list(R.units()) == [1, 5, 7, 11]
    sets = [S.elements for S in enumerate_mult_sets(mk_zmod(6), 2)]
    assert sets[0] == (1,) and (1, 2, 4) in sets and (0, 1, 2, 3, 4) in sets
    with pytest.raises(SNotMultClosed):
        MultSet(R, [1, 2])


def test_subring_f_plus_J():
    R = mk_zmod(6)
    S, incl = subring_f_plus_J(identity_hom(R), Ideal(R, [0, 3]))
    assert S.size == 6 and sorted(incl.map) == list(range(6))


def test_first_true_is_row_major():
    mask = np.zeros((3, 4), dtype=bool)
    mask[2, 0] = mask[1, 3] = True
    assert first_true(mask) == (1, 3)
    assert first_true(np.zeros(3, dtype=bool)) is None


def test_prime_ideal_witness_z12():
    R = mk_zmod(12)
    assert is_prime_ideal(R, [0, 4, 8]).witness == (2, 2)
